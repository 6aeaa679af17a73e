"""
Exact rational linear algebra for qehrhart.

Dense matrices over ``fractions.Fraction``. Rank and echelon structure come from
fraction-free (Bareiss) elimination on integer-scaled rows; the reduced basis is
then recovered by back-substitution over the rationals.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from ._type_check import typecheck_methods


@typecheck_methods
class RationalMatrix:
    """Dense row-major matrix of Fractions. Immutable after construction."""

    def __init__(self, data: Sequence[Sequence[Fraction]], cols: Optional[int] = None):
        """Args:    data: Rows of rationals (ints are promoted)
                 cols: Column count, required when data is empty"""
        rows = tuple(tuple(Fraction(x) for x in row) for row in data)
        if cols is None:
            if not rows:
                raise ValueError("cols is required for a matrix without rows")
            cols = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError(f"Row {i} has {len(row)} entries, expected {cols}")
        self._data = rows
        self.rows = len(rows)
        self.cols = cols

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'RationalMatrix':
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> 'RationalMatrix':
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def entries(self) -> Tuple[Fraction, ...]:
        """Row-major flat view (length rows * cols)."""
        return tuple(x for row in self._data for x in row)

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self._data[i]

    def to_lists(self) -> List[List[Fraction]]:
        return [list(row) for row in self._data]

    def transpose(self) -> 'RationalMatrix':
        return RationalMatrix([[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def stack(self, other: 'RationalMatrix') -> 'RationalMatrix':
        """Rows of self followed by rows of other."""
        if other.cols != self.cols:
            raise ValueError(f"Column mismatch: {self.cols} vs {other.cols}")
        return RationalMatrix(self._data + other._data, self.cols)

    def apply(self, v: Sequence[Fraction]) -> List[Fraction]:
        """Matrix-vector product M v."""
        if len(v) != self.cols:
            raise ValueError(f"Vector of length {len(v)} for matrix with {self.cols} columns")
        return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self._data]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return self.rows

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.cols == other.cols and self._data == other._data

    def __hash__(self):
        return hash((self.cols, self._data))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._data)
        return f"RationalMatrix([{body}], cols={self.cols})"


class EchelonForm(NamedTuple):
    """Result of reduced_echelon; unpacks as (rank, basis, pivot_cols)."""
    rank: int
    basis: RationalMatrix
    pivot_cols: Tuple[int, ...]


def _integer_rows(M: RationalMatrix) -> List[List[int]]:
    """Scale each row by the lcm of its denominators."""
    result = []
    for row in M:
        scale = 1
        for x in row:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
        result.append([int(x * scale) for x in row])
    return result


def bareiss_echelon(rows: List[List[int]], cols: int) -> Tuple[List[List[int]], Tuple[int, ...]]:
    """Fraction-free row echelon form of an integer matrix.
    Every intermediate entry is a minor of the input, so growth stays polynomial.
    Args:    rows: Integer rows (copied, not modified)
             cols: Column count
    Returns: (echelon rows, first `rank` of them nonzero; pivot columns)"""
    A = [list(r) for r in rows]
    m = len(A)
    r = 0
    prev = 1
    pivots = []
    for c in range(cols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        pivot_row = A[r]
        for i in range(r + 1, m):
            row = A[i]
            f = row[c]
            if f == 0:
                # p*row[j] - 0 is still divisible by prev
                for j in range(c + 1, cols):
                    row[j] = p * row[j] // prev
            else:
                for j in range(c + 1, cols):
                    row[j] = (p * row[j] - f * pivot_row[j]) // prev
                row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return A[:r], tuple(pivots)


def reduced_echelon(M: RationalMatrix) -> EchelonForm:
    """Reduced row echelon basis of the row space of M.
    Deterministic for a fixed column order; pivots are leading ones."""
    echelon, pivots = bareiss_echelon(_integer_rows(M), M.cols)
    R = [[Fraction(x) for x in row] for row in echelon]

    for i, c in enumerate(pivots):
        lead = R[i][c]
        if lead != 1:
            R[i] = [x / lead for x in R[i]]

    # Back-substitution, bottom pivot first
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        for k in range(i):
            f = R[k][c]
            if f:
                R[k] = [a - f * b for a, b in zip(R[k], R[i])]

    return EchelonForm(len(pivots), RationalMatrix(R, M.cols), pivots)


def rank(M: RationalMatrix) -> int:
    """Rank via fraction-free elimination (no back-substitution)."""
    _, pivots = bareiss_echelon(_integer_rows(M), M.cols)
    return len(pivots)


def kernel_basis(M: RationalMatrix) -> RationalMatrix:
    """Basis of the right null space {v : M v = 0}, one vector per free column.
    Each vector has a 1 in its free column and 0 in the other free columns."""
    _, R, pivots = reduced_echelon(M)
    pivot_set = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -R.row(i)[f]
        basis.append(v)
    return RationalMatrix(basis, M.cols)


def _leading_index(row: Sequence[Fraction]) -> Optional[int]:
    return next((j for j, x in enumerate(row) if x != 0), None)


def reduce_against(v: Sequence[Fraction], basis: RationalMatrix) -> List[Fraction]:
    """Remainder of v after clearing the pivot columns of a reduced echelon basis."""
    if len(v) != basis.cols:
        raise ValueError(f"Vector of length {len(v)} against basis with {basis.cols} columns")
    w = [Fraction(x) for x in v]
    for row in basis:
        c = _leading_index(row)
        if c is None:
            continue
        f = w[c] / row[c]
        if f:
            w = [a - f * b for a, b in zip(w, row)]
    return w


def in_row_space(v: Sequence[Fraction], basis: RationalMatrix) -> bool:
    """True iff v is a rational combination of the rows of a reduced echelon basis."""
    return not any(reduce_against(v, basis))


def row_space_dim(vectors: Sequence[Sequence[Fraction]], cols: int) -> int:
    """Dimension of the span of the given vectors."""
    if not vectors:
        return 0
    return rank(RationalMatrix(vectors, cols))
