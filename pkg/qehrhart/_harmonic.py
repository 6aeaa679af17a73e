"""
The three q-Ehrhart pipelines.

filtration: F_{m,d} = elements of (A_P)_m vanishing to order >= d at e, computed as
            kernels of binomial coefficient matrices over the shifted points.
harmonic:   lowest parts of the span of (1 + u)^a over the points, harvested from a
            reduced echelon form with columns in ascending degree.
dual:       the apolar complement of gr I(Z), where gr I(Z) collects the leading
            (top-degree) forms of polynomials vanishing on Z, read off the kernel of
            the evaluation matrix.

gr I(Z) uses leading forms: for Z = {0, 1} the kernel in degree <= 2 is x^2 - x,
whose leading form x^2 gives a length-2 quotient at the origin, as the degeneration
of two points must; lowest forms would give (x) and length 1.

The filtration pipeline works on points shifted into the nonnegative orthant; the
gr and dual pipelines evaluate at the points as given.
"""
from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from ._budget import DEFAULT_BUDGET, ComputeBudget
from ._exactlin import RationalMatrix, kernel_basis, rank, reduced_echelon
from ._poly import (Exponent, MultiPoly, apply_diff, gen_binomial, monomials_of_degree,
                    monomials_up_to)
from ._polytope import LatticePointSet, Polytope, dilate, lattice_points
from ._tables import BigradedTable, FiltrationTable, HarmonicBasis

METHODS = ("filtration", "harmonic", "dual")


class FiltrationCache:
    """Per-polytope map of computed tables. Writers take a lock, readers do not;
    values are deterministic so a lost race only repeats work."""

    def __init__(self):
        self._tables: Dict[Hashable, object] = {}
        self._lock = threading.Lock()

    def get(self, key: Hashable):
        return self._tables.get(key)

    def put(self, key: Hashable, value):
        with self._lock:
            self._tables[key] = value
        return value

    def __len__(self):
        return len(self._tables)

    def clear(self):
        with self._lock:
            self._tables.clear()


# Matrix builders

def shifted_points(Z: LatticePointSet) -> Tuple[Exponent, List[Exponent]]:
    """(shift, points - shift) with the shifted points in the nonnegative orthant."""
    shift = Z.min_corner()
    return shift, [tuple(a - s for a, s in zip(p, shift)) for p in Z]


def truncation_cutoff(Z: LatticePointSet) -> int:
    """1 + the largest total degree of a shifted point; no vanishing order reaches it."""
    _, q = shifted_points(Z)
    return 1 + max((sum(p) for p in q), default=0)


def binomial_rows(points: Sequence[Exponent], monomials: Sequence[Exponent]) -> List[List[int]]:
    """Row per monomial u^delta, column per point q: coefficient of u^delta in (1 + u)^q."""
    rows = []
    for delta in monomials:
        row = []
        for q in points:
            c = 1
            for a, k in zip(q, delta):
                c *= gen_binomial(a, k)
                if c == 0:
                    break
            row.append(c)
        rows.append(row)
    return rows


def evaluation_matrix(Z: LatticePointSet, d: int, budget: ComputeBudget = DEFAULT_BUDGET) -> Tuple[RationalMatrix, List[Exponent]]:
    """Rows are points, columns are monomials of degree <= d, entries p^delta."""
    monomials = monomials_up_to(Z.dim, d)
    budget.check_matrix(len(Z), len(monomials), "evaluation matrix")
    rows = []
    for p in Z:
        row = []
        for delta in monomials:
            v = 1
            for a, k in zip(p, delta):
                v *= a ** k
            row.append(v)
        rows.append(row)
    return RationalMatrix(rows, len(monomials)), monomials


# Pipeline (c): filtration by vanishing order

def filtration_of_points(Z: LatticePointSet, m: int = 0, with_bases: bool = False,
                         budget: ComputeBudget = DEFAULT_BUDGET) -> FiltrationTable:
    """Filtration dimensions of the span of the monomials x^p, p in Z."""
    n_points = len(Z)
    if n_points == 0:
        return FiltrationTable(m, (0,), Z, (RationalMatrix([], 0),) if with_bases else None)

    _, q = shifted_points(Z)
    cap = truncation_cutoff(Z)
    dims = [n_points]
    bases = [RationalMatrix.identity(n_points)] if with_bases else None
    conditions: List[List[int]] = []
    for d in range(1, cap + 1):
        # F_{m,d}: no term of total degree d-1 or lower
        conditions.extend(binomial_rows(q, monomials_of_degree(Z.dim, d - 1)))
        budget.check_matrix(len(conditions), n_points, "filtration conditions")
        A = RationalMatrix(conditions, n_points)
        if with_bases:
            K = kernel_basis(A)
            bases.append(reduced_echelon(K).basis if K.rows else K)
            dims.append(K.rows)
        else:
            dims.append(n_points - rank(A))
        if dims[-1] == 0:
            break
    else:
        raise AssertionError(f"filtration of {n_points} points still nonzero at the cap d={cap}")

    return FiltrationTable(m, tuple(dims), Z, tuple(bases) if with_bases else None)


def filtration_dims(P: Polytope, m: int, with_bases: bool = False,
                    budget: ComputeBudget = DEFAULT_BUDGET,
                    cache: Optional[FiltrationCache] = None) -> FiltrationTable:
    """dim F_{m,d} for d = 0, 1, ... down to the first zero."""
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if cache is not None:
        hit = cache.get(("filtration", m, True)) or (None if with_bases else cache.get(("filtration", m, False)))
        if hit is not None:
            return hit
    table = filtration_of_points(lattice_points(dilate(P, m), budget), m, with_bases, budget)
    if cache is not None:
        cache.put(("filtration", m, with_bases), table)
    return table


# Pipeline (b): lowest parts of binomial expansions

def harmonic_basis(Z: LatticePointSet, m: int = 0, budget: ComputeBudget = DEFAULT_BUDGET) -> HarmonicBasis:
    """Graded basis of V_Z from the lowest parts of echelon rows of the expansions (1 + u)^q."""
    if len(Z) == 0:
        raise ValueError("harmonic_basis needs a nonempty point set")
    _, q = shifted_points(Z)
    d_max = truncation_cutoff(Z)
    monomials = monomials_up_to(Z.dim, d_max)
    budget.check_matrix(len(q), len(monomials), "expansion matrix")
    M = RationalMatrix([list(r) for r in zip(*binomial_rows(q, monomials))], len(monomials))
    _, R, pivots = reduced_echelon(M)

    parts: Dict[int, List[MultiPoly]] = {}
    for row, pivot in zip(R, pivots):
        d = sum(monomials[pivot])
        low = {e: c for e, c in zip(monomials, row) if c and sum(e) == d}
        parts.setdefault(d, []).append(MultiPoly(Z.dim, low))
    return HarmonicBasis(m, Z.dim, {d: tuple(polys) for d, polys in sorted(parts.items())})


# Pipeline (a): Hilbert function of gr I(Z)

def gr_hilbert(Z: LatticePointSet, budget: ComputeBudget = DEFAULT_BUDGET) -> List[int]:
    """dim (C[x]/gr I(Z))_d for d = 0, 1, ... until the values sum to |Z|."""
    if len(Z) == 0:
        return [0]
    values = []
    previous = 0
    d = 0
    while previous < len(Z):
        M, _ = evaluation_matrix(Z, d, budget)
        r = rank(M)
        values.append(r - previous)
        previous = r
        d += 1
    return values


def gr_ideal_basis(Z: LatticePointSet, d: int, budget: ComputeBudget = DEFAULT_BUDGET) -> List[MultiPoly]:
    """Basis of (gr I(Z))_d: leading forms of the polynomials of degree <= d vanishing on Z."""
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d}")
    M, monomials = evaluation_matrix(Z, d, budget)
    K = kernel_basis(M)
    top = [i for i, e in enumerate(monomials) if sum(e) == d]
    top_monomials = [monomials[i] for i in top]
    forms = [[row[i] for i in top] for row in K]
    if not forms:
        return []
    _, R, _ = reduced_echelon(RationalMatrix(forms, len(top)))
    return [MultiPoly.from_vector(Z.dim, top_monomials, row) for row in R]


def _pairing_rows(f: MultiPoly, d: int) -> List[List]:
    """Matrix of g -> f(d)g from degree-d forms to degree (d - deg f) forms."""
    source = monomials_of_degree(f.dim, d)
    target = monomials_of_degree(f.dim, d - f.total_degree())
    images = [apply_diff(f, MultiPoly.monomial(beta)) for beta in source]
    return [[image.coefficient(t) for image in images] for t in target]


def harmonic_dual(Z: LatticePointSet, m: int = 0, budget: ComputeBudget = DEFAULT_BUDGET) -> HarmonicBasis:
    """Graded basis of V_Z as the polynomials killed by every f(d), f in gr I(Z)."""
    if len(Z) == 0:
        raise ValueError("harmonic_dual needs a nonempty point set")
    ideal: Dict[int, List[MultiPoly]] = {}
    parts: Dict[int, Tuple[MultiPoly, ...]] = {}
    found = 0
    d = 0
    while found < len(Z):
        if d >= len(Z):
            raise AssertionError(f"harmonic space of {len(Z)} points exceeds degree {d}")
        ideal[d] = gr_ideal_basis(Z, d, budget)
        source = monomials_of_degree(Z.dim, d)
        rows = []
        for e in range(d + 1):
            for f in ideal[e]:
                rows.extend(_pairing_rows(f, d))
        budget.check_matrix(len(rows), len(source), "apolarity matrix")
        K = kernel_basis(RationalMatrix(rows, len(source)))
        if K.rows:
            _, R, _ = reduced_echelon(K)
            parts[d] = tuple(MultiPoly.from_vector(Z.dim, source, row) for row in R)
            found += R.rows
        d += 1
    return HarmonicBasis(m, Z.dim, parts)


# Bigraded tables

def q_row(P: Polytope, m: int, method: str, budget: ComputeBudget = DEFAULT_BUDGET,
          cache: Optional[FiltrationCache] = None) -> Tuple[int, ...]:
    """Coefficients of q^d in the t^m coefficient of E_P(t, q) by one pipeline."""
    if method == "filtration":
        return filtration_dims(P, m, budget=budget, cache=cache).graded_dims()
    Z = lattice_points(dilate(P, m), budget)
    if len(Z) == 0:
        return (0,)
    if method == "harmonic":
        return harmonic_basis(Z, m, budget).dims()
    if method == "dual":
        return harmonic_dual(Z, m, budget).dims()
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


def q_ehrhart(P: Polytope, m_max: int, method: str = "filtration", budget: ComputeBudget = DEFAULT_BUDGET,
              cache: Optional[FiltrationCache] = None, jobs: int = 1) -> BigradedTable:
    """Rows m = 0..m_max of E_P(t, q). Rows are computed in parallel when jobs > 1
    and always assembled in m order."""
    if m_max < 0:
        raise ValueError(f"m_max must be nonnegative, got {m_max}")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs, thread_name_prefix="qehrhart_row") as pool:
            rows = list(pool.map(lambda m: q_row(P, m, method, budget, cache), range(m_max + 1)))
    else:
        rows = [q_row(P, m, method, budget, cache) for m in range(m_max + 1)]
    return BigradedTable.from_rows(rows, method)


def section_ring_table(P: Polytope, m_max: int, budget: ComputeBudget = DEFAULT_BUDGET,
                       cache: Optional[FiltrationCache] = None) -> BigradedTable:
    """dim F_{m,d}, which are also the dimensions of the bigraded section ring pieces."""
    if m_max < 0:
        raise ValueError(f"m_max must be nonnegative, got {m_max}")
    rows = [filtration_dims(P, m, budget=budget, cache=cache).dims for m in range(m_max + 1)]
    return BigradedTable.from_rows(rows, "filtration", kind="section-ring")


def verify_agreement(tables: Dict[str, BigradedTable]) -> List[str]:
    """Describe every row where two methods disagree; empty when all agree."""
    problems = []
    names = sorted(tables)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            rows_a, rows_b = tables[a].rows, tables[b].rows
            for m in range(max(len(rows_a), len(rows_b))):
                ra = rows_a[m] if m < len(rows_a) else None
                rb = rows_b[m] if m < len(rows_b) else None
                if ra != rb:
                    problems.append(f"m={m}: {a} gives {ra}, {b} gives {rb}")
    return problems
