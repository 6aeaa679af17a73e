"""
Seeded property checks.

lemma32_check compares the lowest parts of sum c_a exp(a . x) and sum c_a (1 + x)^a.
multiplicativity_check multiplies random elements of filtered pieces and checks that
the product lands where F_{m,d} * F_{m',d'} in F_{m+m',d+d'} says it must, and that
lowest parts multiply like the harmonic representatives.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ._budget import DEFAULT_BUDGET, ComputeBudget
from ._exactlin import RationalMatrix, in_row_space
from ._harmonic import FiltrationCache, filtration_dims, harmonic_basis
from ._poly import MultiPoly, exp_expand, lowest_part, monomials_of_degree, shift_expand, vanishing_order
from ._polytope import LatticePointSet, Polytope

DEFAULT_SEED = 20240611
COEFFICIENT_RANGE = (-5, 5)


@dataclass
class CheckReport:
    """Outcome of a randomized check; passed when nothing was violated."""
    name: str
    trials: int = 0
    skipped: int = 0
    violations: List[Dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict:
        return {
            "check": self.name,
            "trials": self.trials,
            "skipped": self.skipped,
            "passed": self.passed,
            "violations": self.violations,
        }


def compare_lowest_parts(Z: LatticePointSet, coeffs: Sequence[int]) -> Optional[Tuple[MultiPoly, MultiPoly]]:
    """Lowest parts of the exponential and binomial combinations, or None for all-zero coefficients."""
    if not any(coeffs):
        return None
    # Lowest parts live in V_Z, whose degrees stay below |Z|
    cutoff = len(Z)
    exp_sum = MultiPoly(Z.dim)
    binom_sum = MultiPoly(Z.dim)
    for a, c in zip(Z, coeffs):
        if c:
            exp_sum = exp_sum + exp_expand(a, cutoff).scale(c)
            binom_sum = binom_sum + shift_expand(a, cutoff).scale(c)
    return lowest_part(exp_sum)[1], lowest_part(binom_sum)[1]


def lemma32_check(Z: LatticePointSet, trials: int, seed: int = DEFAULT_SEED) -> CheckReport:
    """Draw integer coefficients in [-5, 5] and compare lowest parts; all-zero draws are skipped."""
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    if len(Z) == 0:
        raise ValueError("lemma32_check needs a nonempty point set")
    rng = random.Random(seed)
    report = CheckReport("lemma32", trials=trials)
    for trial in range(trials):
        coeffs = [rng.randint(*COEFFICIENT_RANGE) for _ in Z]
        outcome = compare_lowest_parts(Z, coeffs)
        if outcome is None:
            report.skipped += 1
            continue
        exp_low, binom_low = outcome
        if exp_low != binom_low:
            report.violations.append({
                "trial": trial,
                "coefficients": coeffs,
                "exponential": str(exp_low),
                "binomial": str(binom_low),
            })
    return report


def random_point_set(rng: random.Random, max_dim: int = 3, max_points: int = 6, radius: int = 3) -> LatticePointSet:
    """Random nonempty integer point set with coordinates in [-radius, radius]."""
    n = rng.randint(1, max_dim)
    count = rng.randint(1, max_points)
    points = {tuple(rng.randint(-radius, radius) for _ in range(n)) for _ in range(count)}
    return LatticePointSet(n, list(points))


def _random_combination(rng: random.Random, basis: RationalMatrix) -> List[Fraction]:
    while True:
        coeffs = [rng.randint(*COEFFICIENT_RANGE) for _ in range(basis.rows)]
        if any(coeffs):
            break
    vector = [Fraction(0)] * basis.cols
    for c, row in zip(coeffs, basis):
        if c:
            vector = [v + c * x for v, x in zip(vector, row)]
    return vector


def multiplicativity_check(P: Polytope, m_max: int, samples: int, seed: int = DEFAULT_SEED,
                           budget: ComputeBudget = DEFAULT_BUDGET,
                           cache: Optional[FiltrationCache] = None) -> CheckReport:
    """Sample products f * g with f in F_{m1,d1}, g in F_{m2,d2}, m1 + m2 <= m_max."""
    if m_max < 2:
        raise ValueError(f"m_max must be at least 2, got {m_max}")
    tables = {m: filtration_dims(P, m, with_bases=True, budget=budget, cache=cache) for m in range(1, m_max + 1)}
    harmonics = {}
    for m, table in tables.items():
        if len(table.points):
            harmonics[m] = harmonic_basis(table.points, m, budget)
    supports = {m: set(t.points.points) for m, t in tables.items()}

    rng = random.Random(seed)
    report = CheckReport("multiplicativity", trials=samples)
    pairs = [(m1, m2) for m1 in range(1, m_max) for m2 in range(1, m_max - m1 + 1)
             if len(tables[m1].points) and len(tables[m2].points)]
    if not pairs:
        report.skipped = samples
        return report

    for sample in range(samples):
        m1, m2 = rng.choice(pairs)
        d1 = rng.randrange(tables[m1].max_order + 1)
        d2 = rng.randrange(tables[m2].max_order + 1)
        f = tables[m1].as_poly(_random_combination(rng, tables[m1].basis(d1)))
        g = tables[m2].as_poly(_random_combination(rng, tables[m2].basis(d2)))
        h = f * g
        m, d = m1 + m2, d1 + d2
        order_f, low_f = vanishing_order(f)
        order_g, low_g = vanishing_order(g)
        order_h, low_h = vanishing_order(h)
        problem = None
        if any(e not in supports[m] for e in h.support()):
            problem = f"product is not supported on {m}P"
        elif order_h < d:
            problem = f"order {order_h} below the predicted {d}"
        elif order_h != order_f + order_g:
            problem = f"order {order_h} is not {order_f} + {order_g}"
        elif low_h != low_f * low_g:
            problem = "lowest part of the product is not the product of lowest parts"
        elif not in_row_space([h.coefficient(p) for p in tables[m].points], tables[m].basis(d)):
            problem = f"product is not in the span of the F_{{{m},{d}}} basis"
        elif not in_row_space(low_h.coefficient_vector(monomials_of_degree(P.dim, order_h)),
                              harmonics[m].part_matrix(order_h)):
            problem = f"lowest part is not in (H_P)_{{{m},{order_h}}}"
        if problem:
            report.violations.append({"sample": sample, "m1": m1, "d1": d1, "m2": m2, "d2": d2,
                                      "f": str(f), "g": str(g), "problem": problem})
    return report
