"""
Minimal generators of the harmonic algebra H_P, bidegree by bidegree.

At (m, d) the decomposable part of (H_P)_{m,d} is spanned by g * h where g runs over
the generators accepted at bidegrees (m', d') with 1 <= m' < m and h over a basis of
(H_P)_{m-m',d-d'}. Anything a product of two positive-m pieces can reach is reachable
this way, because every piece is itself spanned by products of earlier generators.
Products use harmonic representatives multiplied as ordinary polynomials.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ._budget import DEFAULT_BUDGET, ComputeBudget
from ._exactlin import RationalMatrix, in_row_space, reduce_against, reduced_echelon
from ._harmonic import FiltrationCache, harmonic_basis
from ._poly import MultiPoly, monomials_of_degree
from ._polytope import Polytope, dilate, lattice_points
from ._tables import HarmonicBasis


@dataclass(frozen=True)
class Generator:
    m: int
    d: int
    poly: MultiPoly

    def to_dict(self) -> Dict:
        return {"m": self.m, "d": self.d, "poly": self.poly.to_dict(), "text": str(self.poly)}


@dataclass
class GeneratorReport:
    """counts holds (m, d, count) for every bidegree that needs new generators."""
    m_max: int
    counts: List[Tuple[int, int, int]] = field(default_factory=list)
    generators: List[Generator] = field(default_factory=list)
    closure_violations: List[Tuple[int, int]] = field(default_factory=list)
    # Echelon basis of the product span at each bidegree, before completion
    spans: Dict[Tuple[int, int], RationalMatrix] = field(default_factory=dict, repr=False)

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return {(m, d): count for m, d, count in self.counts}

    def new_by_m(self) -> Dict[int, int]:
        totals = {m: 0 for m in range(1, self.m_max + 1)}
        for m, _, count in self.counts:
            totals[m] += count
        return totals

    def to_dict(self) -> Dict:
        return {
            "m_max": self.m_max,
            "counts": [{"m": m, "d": d, "count": count} for m, d, count in self.counts],
            "generators": [g.to_dict() for g in self.generators],
            "closure_violations": [{"m": m, "d": d} for m, d in self.closure_violations],
        }

    def render(self) -> str:
        lines = [f"{'m':>3} {'d':>3} {'count':>6}  generators"]
        for m, d, count in self.counts:
            polys = [str(g.poly) for g in self.generators if (g.m, g.d) == (m, d)]
            lines.append(f"{m:>3} {d:>3} {count:>6}  " + "; ".join(polys))
        if self.closure_violations:
            lines.append(f"closure violated at {self.closure_violations}")
        return "\n".join(lines)


def harmonic_pieces(P: Polytope, m_max: int, budget: ComputeBudget = DEFAULT_BUDGET,
                    cache: Optional[FiltrationCache] = None) -> Dict[int, HarmonicBasis]:
    """Graded harmonic bases of (H_P)_m for m = 1..m_max; empty dilations give empty bases."""
    pieces = {}
    for m in range(1, m_max + 1):
        key = ("harmonic", m)
        hit = cache.get(key) if cache is not None else None
        if hit is None:
            Z = lattice_points(dilate(P, m), budget)
            hit = harmonic_basis(Z, m, budget) if len(Z) else HarmonicBasis(m, P.dim, {})
            if cache is not None:
                cache.put(key, hit)
        pieces[m] = hit
    return pieces


def product_vectors(left: List[MultiPoly], right: List[MultiPoly], monomials) -> List[List]:
    return [(f * g).coefficient_vector(monomials) for f in left for g in right]


def minimal_generators(P: Polytope, m_max: int, budget: ComputeBudget = DEFAULT_BUDGET,
                       cache: Optional[FiltrationCache] = None) -> GeneratorReport:
    """Walk bidegrees with m ascending, then d ascending, and complete the span of
    products of accepted generators to (H_P)_{m,d}.
    Args:    P: Polytope
             m_max: Largest m to process, at least 1
    Returns: GeneratorReport with count = dim (H_P)_{m,d} - dim of the product span"""
    if m_max < 1:
        raise ValueError(f"m_max must be at least 1, got {m_max}")
    pieces = harmonic_pieces(P, m_max, budget, cache)
    report = GeneratorReport(m_max)

    for m in range(1, m_max + 1):
        piece = pieces[m]
        for d in sorted(piece.graded_parts):
            monomials = monomials_of_degree(P.dim, d)
            rows = []
            for g in report.generators:
                if g.m < m and g.d <= d:
                    rows.extend(product_vectors([g.poly], list(pieces[m - g.m].part(d - g.d)), monomials))
            budget.check_matrix(len(rows), len(monomials), "product span")
            span = reduced_echelon(RationalMatrix(rows, len(monomials))).basis
            report.spans[(m, d)] = span

            target = piece.part_matrix(d)
            if any(not in_row_space(row, target) for row in span):
                report.closure_violations.append((m, d))

            count = len(piece.part(d)) - span.rows
            accepted = []
            for h in piece.part(d):
                if len(accepted) == count:
                    break
                remainder = reduce_against(h.coefficient_vector(monomials), span)
                if any(remainder):
                    accepted.append(Generator(m, d, h))
                    span = reduced_echelon(span.stack(RationalMatrix([remainder], len(monomials)))).basis
            if count > 0:
                report.counts.append((m, d, count))
                report.generators.extend(accepted)
    return report
