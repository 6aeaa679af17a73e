"""
Desk-scale diagnostics for the non-finitely-generated triangle.

For the rational triangle with vertices (0,0), (2/15,16/15), (-6/7,4/7):
  1. the largest vanishing order on (A_P)_m is m, attained by (y - 1)^m;
  2. every element of F_{m,d} with d/m >= 104/105 is divisible by y - 1;
  3. for d/m < 104/105 some F_{km,kd} holds an element of order exactly kd
     that y - 1 does not divide.
The checks below test these statements for small m and report growth of the
generator set as evidence, not proof.

Divisibility of a Laurent polynomial f by x_j - 1 is f|_{x_j=1} = 0, which is linear
in the coefficients: points that differ only in coordinate j must have coefficients
summing to zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ._budget import DEFAULT_BUDGET, BudgetExceeded, ComputeBudget
from ._exactlin import RationalMatrix, in_row_space, kernel_basis, reduced_echelon, row_space_dim
from ._generators import GeneratorReport, minimal_generators
from ._harmonic import FiltrationCache, binomial_rows, filtration_dims, shifted_points
from ._poly import MultiPoly, divide_exact, linear_divisor_variable, monomials_of_degree, vanishing_order
from ._polytope import Polytope

# Nef threshold of the divisor H - (104/105)E on the blow-up model of the triangle
GK_THRESHOLD = Fraction(104, 105)
DEFAULT_K_MAX = 8


class UnsupportedDivisorError(ValueError):
    """The divisor is not a nonzero multiple of x_j - 1."""


def curve_divisor(dim: int) -> MultiPoly:
    """y - 1, the curve through e the diagnostics test against; x - 1 on a line."""
    if dim < 1:
        raise UnsupportedDivisorError(f"no curve divisor in {dim} variables")
    return MultiPoly.variable(dim, min(1, dim - 1)) - MultiPoly.constant(dim)


def divisor_variable(divisor: MultiPoly, dim: int) -> int:
    j = linear_divisor_variable(divisor) if divisor.dim == dim else None
    if j is None:
        raise UnsupportedDivisorError(f"divisor {divisor} is not of the form c * (x_j - 1) in {dim} variables")
    return j


def restriction_groups(points: Sequence[Tuple[int, ...]], j: int) -> List[List[int]]:
    """Indices of points grouped by every coordinate except j."""
    groups: Dict[Tuple[int, ...], List[int]] = {}
    for i, p in enumerate(points):
        groups.setdefault(p[:j] + p[j + 1:], []).append(i)
    return list(groups.values())


def divisible_subspace(P: Polytope, m: int, d: int, divisor: MultiPoly,
                       budget: ComputeBudget = DEFAULT_BUDGET,
                       cache: Optional[FiltrationCache] = None) -> RationalMatrix:
    """Reduced echelon basis of {f in F_{m,d} : divisor | f}, over the points of mP."""
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d}")
    j = divisor_variable(divisor, P.dim)
    table = filtration_dims(P, m, with_bases=True, budget=budget, cache=cache)
    basis = table.basis(d)
    if basis.rows == 0:
        return basis
    groups = restriction_groups(table.points.points, j)
    # Column i: restriction of the i-th basis element, one row per group
    M = RationalMatrix([[sum(row[k] for k in group) for row in basis] for group in groups], basis.rows)
    combos = kernel_basis(M)
    if combos.rows == 0:
        return RationalMatrix([], basis.cols)
    vectors = [[sum(c * row[k] for c, row in zip(combo, basis)) for k in range(basis.cols)] for combo in combos]
    return reduced_echelon(RationalMatrix(vectors, basis.cols)).basis


def divisibility_check(P: Polytope, m: int, d: int, divisor: MultiPoly,
                       budget: ComputeBudget = DEFAULT_BUDGET,
                       cache: Optional[FiltrationCache] = None) -> bool:
    """True iff exact division by the divisor succeeds on every basis element of F_{m,d}.
    Vacuously true once F_{m,d} = 0."""
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d}")
    divisor_variable(divisor, P.dim)
    table = filtration_dims(P, m, with_bases=True, budget=budget, cache=cache)
    return all(divide_exact(f, divisor) is not None for f in table.basis_polys(d))


def max_vanishing_order(P: Polytope, m: int, budget: ComputeBudget = DEFAULT_BUDGET,
                        cache: Optional[FiltrationCache] = None) -> Tuple[int, MultiPoly]:
    """Largest d with F_{m,d} != 0, and the first echelon basis element of that piece."""
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    table = filtration_dims(P, m, with_bases=True, budget=budget, cache=cache)
    if len(table.points) == 0:
        raise ValueError(f"{m}P contains no lattice points")
    order = table.max_order
    return order, table.basis_polys(order)[0]


def _first_outside(candidates: RationalMatrix, subspace: RationalMatrix) -> Optional[Tuple]:
    return next((row for row in candidates if not in_row_space(row, subspace)), None)


def check_regime(m: int, d: int):
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    if d < 0 or Fraction(d, m) >= GK_THRESHOLD:
        raise ValueError(f"d/m = {d}/{m} is outside the strict regime 0 <= d/m < {GK_THRESHOLD}")


def property3_search(P: Polytope, m: int, d: int, k_max: int = DEFAULT_K_MAX,
                     divisor: Optional[MultiPoly] = None, budget: ComputeBudget = DEFAULT_BUDGET,
                     cache: Optional[FiltrationCache] = None) -> Optional[Tuple[int, MultiPoly]]:
    """Smallest k <= k_max such that F_{km,kd} has an element of order exactly kd
    that the divisor (default y - 1) does not divide, with such an element; None
    when every k up to k_max fails."""
    check_regime(m, d)
    if k_max < 1:
        raise ValueError(f"k_max must be at least 1, got {k_max}")
    divisor = divisor if divisor is not None else curve_divisor(P.dim)
    for k in range(1, k_max + 1):
        table = filtration_dims(P, k * m, with_bases=True, budget=budget, cache=cache)
        F = table.basis(k * d)
        upper = table.basis(k * d + 1)
        divisible = divisible_subspace(P, k * m, k * d, divisor, budget, cache)
        # Two proper subspaces never cover F: pick outside each, combine if needed
        b1 = _first_outside(F, upper)
        b2 = _first_outside(F, divisible)
        if b1 is None or b2 is None:
            continue
        if not in_row_space(b1, divisible):
            witness = b1
        elif not in_row_space(b2, upper):
            witness = b2
        else:
            witness = [a + b for a, b in zip(b1, b2)]
        return k, table.as_poly(witness)
    return None


def divisible_lowest_parts(P: Polytope, m: int, d: int, divisor: MultiPoly,
                           budget: ComputeBudget = DEFAULT_BUDGET,
                           cache: Optional[FiltrationCache] = None) -> List[List[Fraction]]:
    """Degree-d parts of the expansions of the divisible elements of F_{m,d},
    as vectors over monomials_of_degree(dim, d)."""
    D = divisible_subspace(P, m, d, divisor, budget, cache)
    if D.rows == 0:
        return []
    table = filtration_dims(P, m, with_bases=True, budget=budget, cache=cache)
    _, q = shifted_points(table.points)
    B = RationalMatrix(binomial_rows(q, monomials_of_degree(P.dim, d)), len(q))
    return [B.apply(row) for row in D]


@dataclass(frozen=True)
class GrowthRecord:
    """alpha is the running maximum of d/m over bidegrees carrying a generator that
    the divisor does not account for; None until one appears."""
    m: int
    new_generators: int
    alpha: Optional[Fraction]

    def to_dict(self) -> Dict:
        return {"m": self.m, "new_generators": self.new_generators,
                "alpha": None if self.alpha is None else str(self.alpha)}


def generator_growth(P: Polytope, m_max: int, divisor: Optional[MultiPoly] = None,
                     budget: ComputeBudget = DEFAULT_BUDGET, cache: Optional[FiltrationCache] = None,
                     generators: Optional[GeneratorReport] = None) -> List[GrowthRecord]:
    """Per m: number of new generators and alpha.
    A bidegree (m, d) counts toward alpha when the product span together with the
    lowest parts of divisible elements of F_{m,d} still misses part of (H_P)_{m,d}."""
    if m_max < 2:
        raise ValueError(f"m_max must be at least 2, got {m_max}")
    divisor = divisor if divisor is not None else curve_divisor(P.dim)
    report = generators if generators is not None else minimal_generators(P, m_max, budget, cache)
    new_by_m = report.new_by_m()
    records = []
    alpha: Optional[Fraction] = None
    for m in range(1, m_max + 1):
        for gm, d, count in report.counts:
            if gm != m:
                continue
            span = report.spans[(m, d)]
            vectors = list(span) + divisible_lowest_parts(P, m, d, divisor, budget, cache)
            covered = row_space_dim(vectors, len(monomials_of_degree(P.dim, d)))
            if covered < span.rows + count:
                ratio = Fraction(d, m)
                alpha = ratio if alpha is None else max(alpha, ratio)
        records.append(GrowthRecord(m, new_by_m.get(m, 0), alpha))
    return records


@dataclass
class GKReport:
    polytope: str
    m_max: int
    k_max: int
    orders: List[Dict] = field(default_factory=list)
    divisibility: List[Dict] = field(default_factory=list)
    property3: List[Dict] = field(default_factory=list)
    growth: List[GrowthRecord] = field(default_factory=list)
    aborted: bool = False
    abort_reason: str = ""

    def to_dict(self) -> Dict:
        return {
            "polytope": self.polytope,
            "m_max": self.m_max,
            "k_max": self.k_max,
            "orders": self.orders,
            "divisibility": self.divisibility,
            "property3": self.property3,
            "growth": [r.to_dict() for r in self.growth],
            "aborted": self.aborted,
            "abort_reason": self.abort_reason,
        }

    def render(self) -> str:
        lines = [f"polytope {self.polytope}, m <= {self.m_max}, k <= {self.k_max}", "",
                 f"{'m':>3} {'order':>6} {'verified':>9}  witness"]
        for r in self.orders:
            lines.append(f"{r['m']:>3} {r['order']:>6} {r['verified_order']:>9}  {r['witness']}")
        lines += ["", f"{'m':>3} {'d':>3}  divisible"]
        for r in self.divisibility:
            lines.append(f"{r['m']:>3} {r['d']:>3}  {'yes' if r['divisible'] else 'no'}")
        if self.property3:
            lines += ["", f"{'m':>3} {'d':>3} {'outcome':>12} {'k':>3}  witness"]
            for r in self.property3:
                k = "-" if r["k"] is None else r["k"]
                lines.append(f"{r['m']:>3} {r['d']:>3} {r['outcome']:>12} {k:>3}  {r['witness'] or ''}")
        if self.growth:
            lines += ["", f"{'m':>3} {'new':>4}  alpha"]
            for g in self.growth:
                lines.append(f"{g.m:>3} {g.new_generators:>4}  {'-' if g.alpha is None else g.alpha}")
        if self.aborted:
            lines += ["", f"aborted: {self.abort_reason}"]
        return "\n".join(lines)


def gk_report(P: Polytope, m_max: int, k_max: int = DEFAULT_K_MAX, divisor: Optional[MultiPoly] = None,
              budget: ComputeBudget = DEFAULT_BUDGET, cache: Optional[FiltrationCache] = None) -> GKReport:
    """All diagnostics for m = 1..m_max. A budget overrun stops the report and leaves
    what was computed so far, except inside a property-3 search, which is recorded as
    aborted for that (m, d) only."""
    if m_max < 1:
        raise ValueError(f"m_max must be at least 1, got {m_max}")
    divisor = divisor if divisor is not None else curve_divisor(P.dim)
    report = GKReport(P.name or repr(P), m_max, k_max)
    try:
        for m in range(1, m_max + 1):
            order, witness = max_vanishing_order(P, m, budget, cache)
            report.orders.append({"m": m, "order": order, "witness": str(witness),
                                  "verified_order": vanishing_order(witness)[0]})
            threshold = math.ceil(GK_THRESHOLD * m)
            for d in range(order + 1):
                report.divisibility.append({
                    "m": m, "d": d, "above_threshold": d >= threshold,
                    "divisible": divisibility_check(P, m, d, divisor, budget, cache),
                })
        for m in range(1, m_max + 1):
            for d in range(m + 1):
                if Fraction(d, m) >= GK_THRESHOLD:
                    break
                try:
                    found = property3_search(P, m, d, k_max, divisor, budget, cache)
                except BudgetExceeded as e:
                    report.property3.append({"m": m, "d": d, "outcome": "aborted", "k": None,
                                             "witness": None, "reason": str(e)})
                    continue
                if found is None:
                    report.property3.append({"m": m, "d": d, "outcome": "inconclusive", "k": None, "witness": None})
                else:
                    k, w = found
                    report.property3.append({"m": m, "d": d, "outcome": "found", "k": k, "witness": str(w)})
        if m_max >= 2:
            report.growth = generator_growth(P, m_max, divisor, budget, cache)
    except BudgetExceeded as e:
        report.aborted = True
        report.abort_reason = str(e)
    return report
