"""Unit tests for the non-finite-generation diagnostics on the rational triangle."""
from fractions import Fraction

import pytest

from qehrhart import (GK_THRESHOLD, BudgetExceeded, ComputeBudget, MultiPoly, UnsupportedDivisorError,
                      divide_exact, divisibility_check, divisible_subspace, filtration_dims, generator_growth,
                      gk_report, max_vanishing_order, minimal_generators, property3_search, vanishing_order)
from qehrhart._exactlin import RationalMatrix, in_row_space, rank
from qehrhart._gk import curve_divisor, restriction_groups
from qehrhart._poly import substitute_one

X = MultiPoly.variable(2, 0)
Y = MultiPoly.variable(2, 1)
Y_MINUS_ONE = Y - 1


def test_curve_divisor():
    assert curve_divisor(2) == Y_MINUS_ONE
    assert curve_divisor(1) == MultiPoly(1, {(1,): 1, (0,): -1})


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_largest_order_is_m(gk_triangle, gk_cache, m):
    order, witness = max_vanishing_order(gk_triangle, m, cache=gk_cache)
    assert order == m
    assert vanishing_order(witness)[0] == m
    assert divide_exact(witness, Y_MINUS_ONE) is not None


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_y_minus_one_powers_reach_order_m(gk_triangle, gk_cache, m):
    table = filtration_dims(gk_triangle, m, with_bases=True, cache=gk_cache)
    power = Y_MINUS_ONE ** m
    assert set(power.support()) <= set(table.points.points)
    assert in_row_space([power.coefficient(p) for p in table.points], table.basis(m))


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_top_piece_is_divisible(gk_triangle, gk_cache, m):
    assert divisibility_check(gk_triangle, m, m, Y_MINUS_ONE, cache=gk_cache)


def test_divisibility_examples(gk_triangle, gk_cache):
    assert divisibility_check(gk_triangle, 1, 1, Y_MINUS_ONE, cache=gk_cache)
    assert not divisibility_check(gk_triangle, 1, 0, Y_MINUS_ONE, cache=gk_cache)
    assert not divisibility_check(gk_triangle, 1, 1, X - 1, cache=gk_cache)
    # F_{1,2} = 0
    assert divisibility_check(gk_triangle, 1, 2, Y_MINUS_ONE, cache=gk_cache)


def test_other_divisors_are_rejected(gk_triangle, gk_cache):
    with pytest.raises(UnsupportedDivisorError):
        divisibility_check(gk_triangle, 1, 0, X + Y, cache=gk_cache)
    with pytest.raises(UnsupportedDivisorError):
        divisible_subspace(gk_triangle, 1, 0, MultiPoly(1, {(1,): 1, (0,): -1}), cache=gk_cache)


def test_restriction_groups():
    assert restriction_groups([(0, 0), (0, 1), (1, 1)], 1) == [[0, 1], [2]]
    assert restriction_groups([(0, 0), (0, 1), (1, 1)], 0) == [[0], [1, 2]]


class TestDivisibleSubspace:

    @pytest.mark.parametrize("m, d", [(1, 0), (2, 0), (2, 1), (3, 1), (3, 2)])
    def test_dimension_matches_restrictions(self, gk_triangle, gk_cache, m, d):
        """dim = dim F_{m,d} - rank of the restrictions to y = 1."""
        polys = filtration_dims(gk_triangle, m, with_bases=True, cache=gk_cache).basis_polys(d)
        restricted = [substitute_one(f, 1) for f in polys]
        monomials = sorted({e for r in restricted for e in r.support()})
        R = RationalMatrix([r.coefficient_vector(monomials) for r in restricted], len(monomials))
        D = divisible_subspace(gk_triangle, m, d, Y_MINUS_ONE, cache=gk_cache)
        assert D.rows == len(polys) - rank(R)

    def test_elements_are_divisible(self, gk_triangle, gk_cache):
        table = filtration_dims(gk_triangle, 3, with_bases=True, cache=gk_cache)
        for row in divisible_subspace(gk_triangle, 3, 1, Y_MINUS_ONE, cache=gk_cache):
            assert divide_exact(table.as_poly(row), Y_MINUS_ONE) is not None

    def test_shrinks_with_d(self, gk_triangle, gk_cache):
        dims = [divisible_subspace(gk_triangle, 3, d, Y_MINUS_ONE, cache=gk_cache).rows for d in range(5)]
        assert dims == sorted(dims, reverse=True)
        assert dims[4] == 0

    def test_contains_multiples_of_the_previous_dilation(self, gk_triangle, gk_cache):
        """(y - 1) F_{m-1,d-1} lies in the divisible part of F_{m,d}."""
        for m in range(2, 4):
            lower = filtration_dims(gk_triangle, m - 1, with_bases=True, cache=gk_cache)
            table = filtration_dims(gk_triangle, m, with_bases=True, cache=gk_cache)
            for d in range(1, m + 1):
                D = divisible_subspace(gk_triangle, m, d, Y_MINUS_ONE, cache=gk_cache)
                for f in lower.basis_polys(d - 1):
                    g = f * Y_MINUS_ONE
                    assert in_row_space([g.coefficient(p) for p in table.points], D)


class TestProperty3:

    def test_constant_at_m1(self, gk_triangle, gk_cache):
        assert property3_search(gk_triangle, 1, 0, cache=gk_cache) == (1, MultiPoly.constant(2))

    def test_half_slope_found_at_k1(self, gk_triangle, gk_cache):
        """2P contains (-1, 1), so x^-1 y - 1 already works."""
        k, witness = property3_search(gk_triangle, 2, 1, cache=gk_cache)
        assert k == 1
        assert vanishing_order(witness)[0] == 1
        assert divide_exact(witness, Y_MINUS_ONE) is None

    @pytest.mark.parametrize("m, d", [(1, 0), (2, 0), (2, 1), (3, 1)])
    def test_witnesses_have_exact_order(self, gk_triangle, gk_cache, m, d):
        k, witness = property3_search(gk_triangle, m, d, k_max=2, cache=gk_cache)
        assert vanishing_order(witness)[0] == k * d
        assert divide_exact(witness, Y_MINUS_ONE) is None
        table = filtration_dims(gk_triangle, k * m, with_bases=True, cache=gk_cache)
        assert set(witness.support()) <= set(table.points.points)

    @pytest.mark.parametrize("m, d", [(1, 1), (2, 2), (0, 0), (105, 104), (2, -1)])
    def test_outside_the_regime(self, gk_triangle, m, d):
        with pytest.raises(ValueError):
            property3_search(gk_triangle, m, d)

    def test_k_max_must_be_positive(self, gk_triangle):
        with pytest.raises(ValueError):
            property3_search(gk_triangle, 1, 0, k_max=0)


def test_threshold():
    assert GK_THRESHOLD == Fraction(104, 105)


def test_growth_on_the_segment(segment):
    records = generator_growth(segment, 3)
    assert [r.new_generators for r in records] == [2, 0, 0]
    assert [r.alpha for r in records] == [0, 0, 0]
    assert records[0].to_dict() == {"m": 1, "new_generators": 2, "alpha": "0"}


def test_growth_is_consistent_with_the_generators(gk_triangle, gk_cache):
    generators = minimal_generators(gk_triangle, 3, cache=gk_cache)
    records = generator_growth(gk_triangle, 3, cache=gk_cache, generators=generators)
    assert [r.m for r in records] == [1, 2, 3]
    assert {r.m: r.new_generators for r in records} == generators.new_by_m()
    alphas = [r.alpha for r in records if r.alpha is not None]
    assert alphas == sorted(alphas)
    assert all(0 <= a <= 1 for a in alphas)


def test_growth_up_to_m6(gk_triangle, gk_cache):
    records = generator_growth(gk_triangle, 6, cache=gk_cache)
    assert [r.m for r in records] == list(range(1, 7))
    assert [r.alpha for r in records] == [Fraction(0), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4),
                                          Fraction(4, 5), Fraction(4, 5)]


def test_growth_needs_two_dilations(segment):
    with pytest.raises(ValueError):
        generator_growth(segment, 1)


def test_report(gk_triangle, gk_cache):
    report = gk_report(gk_triangle, 3, k_max=2, cache=gk_cache)
    assert not report.aborted
    assert [(r["m"], r["order"], r["verified_order"]) for r in report.orders] == [(1, 1, 1), (2, 2, 2), (3, 3, 3)]
    assert all(r["divisible"] for r in report.divisibility if r["above_threshold"])
    first = report.property3[0]
    assert (first["m"], first["d"], first["outcome"], first["k"]) == (1, 0, "found", 1)
    assert {r["outcome"] for r in report.property3} <= {"found", "inconclusive", "aborted"}
    assert len(report.growth) == 3
    data = report.to_dict()
    assert data["polytope"] == "gk-triangle"
    assert data["growth"][0]["m"] == 1
    assert report.render().startswith("polytope gk-triangle, m <= 3, k <= 2")


def test_report_stops_on_the_budget(gk_triangle):
    report = gk_report(gk_triangle, 2, budget=ComputeBudget(max_matrix_entries=4))
    assert report.aborted
    assert "over the cap of 4" in report.abort_reason
    assert report.orders == []
    assert "aborted:" in report.render()


def test_budget_errors_surface_from_single_checks(gk_triangle):
    with pytest.raises(BudgetExceeded):
        max_vanishing_order(gk_triangle, 1, budget=ComputeBudget(max_matrix_entries=4))


def test_max_order_argument_checks(gk_triangle):
    with pytest.raises(ValueError):
        max_vanishing_order(gk_triangle, 0)


def test_other_corpus_orders(triangle, point):
    assert max_vanishing_order(triangle, 1)[0] == 2
    assert max_vanishing_order(point, 1) == (0, MultiPoly.constant(1))


def test_triangle_generator_is_not_divisible(triangle):
    """At y = 1 the order-two element becomes (x - 1)^2."""
    assert not divisibility_check(triangle, 1, 2, Y_MINUS_ONE)
