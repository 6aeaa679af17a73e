"""
Result tables: filtration dimensions, graded harmonic bases and bigraded q-Ehrhart rows.

All tables serialize to JSON-ready dicts with explicit (m, d) indexing; the bigraded
table also exports CSV with columns m, d, dim.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ._exactlin import RationalMatrix, reduced_echelon
from ._poly import MultiPoly, monomials_of_degree
from ._polytope import LatticePointSet


def _trim(row: Sequence[int]) -> Tuple[int, ...]:
    """Drop trailing zeros, keeping at least one entry."""
    row = list(row)
    while len(row) > 1 and row[-1] == 0:
        row.pop()
    return tuple(row) if row else (0,)


@dataclass(frozen=True)
class FiltrationTable:
    """dims[d] = dim F_{m,d}; bases[d] (optional) is a reduced echelon basis of F_{m,d}
    as coefficient vectors over `points`, the monomial support of (A_P)_m."""
    m: int
    dims: Tuple[int, ...]
    points: LatticePointSet
    bases: Optional[Tuple[RationalMatrix, ...]] = None

    @property
    def max_order(self) -> int:
        """Largest d with F_{m,d} nonzero (-1 for an empty dilation)."""
        return len(self.dims) - 2

    def graded_dims(self) -> Tuple[int, ...]:
        """dim F_{m,d} / F_{m,d+1}, the q-Ehrhart row."""
        if self.dims[0] == 0:
            return (0,)
        return _trim(a - b for a, b in zip(self.dims, self.dims[1:]))

    def basis(self, d: int) -> RationalMatrix:
        if self.bases is None:
            raise ValueError("table was computed without bases")
        if d >= len(self.bases):
            return RationalMatrix([], len(self.points))
        return self.bases[d]

    def basis_polys(self, d: int) -> List[MultiPoly]:
        """Basis of F_{m,d} as Laurent polynomials."""
        return [self.as_poly(row) for row in self.basis(d)]

    def as_poly(self, coeffs: Sequence) -> MultiPoly:
        return MultiPoly.from_vector(self.points.dim, self.points.points, coeffs)

    def to_dict(self) -> Dict:
        data = {
            "m": self.m,
            "dims": [{"m": self.m, "d": d, "dim": dim} for d, dim in enumerate(self.dims)],
        }
        if self.bases is not None:
            data["bases"] = [
                {"d": d, "elements": [self.as_poly(row).to_dict() for row in basis]}
                for d, basis in enumerate(self.bases)
            ]
        return data


@dataclass(frozen=True)
class HarmonicBasis:
    """graded_parts[d] is an echelon basis of (H_P)_{m,d} as homogeneous polynomials."""
    m: int
    dim: int
    graded_parts: Dict[int, Tuple[MultiPoly, ...]] = field(default_factory=dict)

    def dims(self) -> Tuple[int, ...]:
        if not self.graded_parts:
            return (0,)
        top = max(self.graded_parts)
        return _trim(len(self.graded_parts.get(d, ())) for d in range(top + 1))

    def total(self) -> int:
        return sum(len(part) for part in self.graded_parts.values())

    def part(self, d: int) -> Tuple[MultiPoly, ...]:
        return self.graded_parts.get(d, ())

    def part_matrix(self, d: int) -> RationalMatrix:
        """Reduced echelon coefficient matrix of the degree-d part over monomials_of_degree(dim, d)."""
        monomials = monomials_of_degree(self.dim, d)
        rows = [p.coefficient_vector(monomials) for p in self.part(d)]
        return reduced_echelon(RationalMatrix(rows, len(monomials))).basis

    def to_dict(self) -> Dict:
        return {
            "m": self.m,
            "parts": [
                {"m": self.m, "d": d, "elements": [p.to_dict() for p in polys]}
                for d, polys in sorted(self.graded_parts.items())
            ],
        }


@dataclass(frozen=True)
class BigradedTable:
    """rows[m][d] = dim (H_P)_{m,d}, i.e. the coefficient of t^m q^d in E_P(t, q).
    kind "section-ring" tables hold dim F_{m,d} instead."""
    rows: Tuple[Tuple[int, ...], ...]
    method: str = "filtration"
    kind: str = "q-ehrhart"

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], method: str = "filtration",
                  kind: str = "q-ehrhart") -> 'BigradedTable':
        if kind == "q-ehrhart":
            rows = [_trim(r) for r in rows]
        return cls(tuple(tuple(int(x) for x in r) for r in rows), method, kind)

    @property
    def m_max(self) -> int:
        return len(self.rows) - 1

    def row_sums(self) -> List[int]:
        return [sum(r) for r in self.rows]

    def specialize(self) -> List[int]:
        """Set q = 1: the classical Ehrhart counts."""
        return self.row_sums()

    def entries(self) -> List[Tuple[int, int, int]]:
        return [(m, d, dim) for m, row in enumerate(self.rows) for d, dim in enumerate(row)]

    def to_dict(self) -> Dict:
        return {
            "kind": self.kind,
            "method": self.method,
            "m_max": self.m_max,
            "entries": [{"m": m, "d": d, "dim": dim} for m, d, dim in self.entries()],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'BigradedTable':
        rows: List[List[int]] = [[] for _ in range(data["m_max"] + 1)]
        for entry in data["entries"]:
            row = rows[entry["m"]]
            while len(row) <= entry["d"]:
                row.append(0)
            row[entry["d"]] = entry["dim"]
        return cls(tuple(tuple(r) for r in rows), data.get("method", "filtration"), data.get("kind", "q-ehrhart"))

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["m", "d", "dim"])
        writer.writerows(self.entries())
        return buffer.getvalue()

    def render(self) -> str:
        """Human-readable rows as q-polynomials."""
        lines = []
        for m, row in enumerate(self.rows):
            terms = []
            for d, dim in enumerate(row):
                if dim == 0:
                    continue
                if d == 0:
                    terms.append(str(dim))
                else:
                    q = "q" if d == 1 else f"q^{d}"
                    terms.append(q if dim == 1 else f"{dim}{q}")
            poly = " + ".join(terms) if terms else "0"
            lines.append(f"t^{m}: {poly:<40} {list(row)}")
        return "\n".join(lines)
