"""Unit tests for exact rational linear algebra, checked against sympy."""
import random
from fractions import Fraction

import pytest
import sympy

from qehrhart import RationalMatrix, kernel_basis, rank, reduced_echelon
from qehrhart._exactlin import bareiss_echelon, in_row_space, reduce_against, row_space_dim


def random_matrix(rng, rows, cols, low=-4, high=4, rational=False):
    data = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            x = Fraction(rng.randint(low, high))
            if rational and rng.random() < 0.3:
                x /= rng.randint(2, 5)
            row.append(x)
        data.append(row)
    return RationalMatrix(data, cols)


def to_sympy(M):
    return sympy.Matrix(M.rows, M.cols, [sympy.Rational(x.numerator, x.denominator) for x in M.entries])


def from_sympy_row(row):
    return [Fraction(int(x.p), int(x.q)) for x in row]


def test_rank_matches_sympy():
    rng = random.Random(11)
    for _ in range(40):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        M = random_matrix(rng, rows, cols, rational=True)
        assert rank(M) == to_sympy(M).rank()


def test_low_rank_products():
    rng = random.Random(5)
    for _ in range(20):
        A = to_sympy(random_matrix(rng, 5, 2))
        B = to_sympy(random_matrix(rng, 2, 6))
        product = A * B
        M = RationalMatrix([from_sympy_row(product.row(i)) for i in range(5)], 6)
        assert rank(M) == product.rank() <= 2


def test_reduced_echelon_matches_sympy():
    rng = random.Random(3)
    for _ in range(30):
        M = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 6), rational=True)
        result = reduced_echelon(M)
        expected, pivots = to_sympy(M).rref()
        assert result.pivot_cols == tuple(pivots)
        assert result.rank == len(pivots)
        for i in range(result.rank):
            assert list(result.basis.row(i)) == from_sympy_row(expected.row(i))


def test_kernel_vectors_are_annihilated():
    rng = random.Random(8)
    for _ in range(30):
        M = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 7))
        K = kernel_basis(M)
        assert K.rows + rank(M) == M.cols
        for v in K:
            assert all(x == 0 for x in M.apply(v))


def test_kernel_of_a_single_row():
    K = kernel_basis(RationalMatrix([[1, 1]]))
    assert K.to_lists() == [[-1, 1]]


def test_kernel_of_full_rank_and_zero_matrices():
    assert kernel_basis(RationalMatrix.identity(3)).rows == 0
    assert kernel_basis(RationalMatrix([], 3)) == RationalMatrix.identity(3)


def test_bareiss_keeps_integers():
    echelon, pivots = bareiss_echelon([[2, 4, 6], [1, 3, 5], [3, 7, 11]], 3)
    assert pivots == (0, 1)
    assert all(isinstance(x, int) for row in echelon for x in row)


def test_row_space_membership():
    basis = reduced_echelon(RationalMatrix([[1, 2, 3], [0, 1, 1]])).basis
    assert in_row_space([2, 5, 7], basis)
    assert not in_row_space([0, 0, 1], basis)
    assert reduce_against([0, 0, 0], basis) == [0, 0, 0]
    with pytest.raises(ValueError):
        reduce_against([1, 2], basis)


def test_row_space_dim():
    assert row_space_dim([[1, 0], [2, 0]], 2) == 1
    assert row_space_dim([], 4) == 0


def test_matrix_shape_checks():
    with pytest.raises(ValueError):
        RationalMatrix([[1, 2], [3]])
    with pytest.raises(ValueError):
        RationalMatrix([])
    M = RationalMatrix([[1, 2, 3]])
    assert M.transpose().to_lists() == [[1], [2], [3]]
    assert RationalMatrix([], 2).transpose() == RationalMatrix([[], []], 0)
    with pytest.raises(ValueError):
        M.stack(RationalMatrix([[1, 2]]))


@pytest.mark.pedantic
def test_matrices_hash_by_value():
    assert hash(RationalMatrix([[1, 2]])) == hash(RationalMatrix([[Fraction(2, 2), 2]]))
