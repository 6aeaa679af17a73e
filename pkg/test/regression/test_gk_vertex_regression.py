#!/usr/bin/env python3

from fractions import Fraction

import pytest

from qehrhart import dilate, lattice_points, max_vanishing_order, parse_polytope


@pytest.mark.regression_test
def test_gk_triangle_vertex_is_16_15(gk_triangle):
    """
    Discrepancy: one description of the rational triangle gives the second vertex as
    (2/15, 6/15), another as (2/15, 16/15).

    Category: Wrong input data.
    With (2/15, 6/15) the triangle lies below y = 4/7, so (0, 1) is not in P and the
    vanishing order statements degenerate. Scaling by 105 must give twice the
    integral model vertex (7, 56), which only (2/15, 16/15) satisfies.
    Expected: the builtin uses (2/15, 16/15), contains (0, 1), and has order m on (A_P)_m.
    """
    assert gk_triangle.vertices[1] == (Fraction(2, 15), Fraction(16, 15))
    assert tuple(105 * c for c in gk_triangle.vertices[1]) == (14, 112)
    assert (0, 1) in lattice_points(gk_triangle)
    assert max_vanishing_order(gk_triangle, 2)[0] == 2

    misprint = parse_polytope({"dim": 2, "vertices": [["0", "0"], ["2/15", "6/15"], ["-6/7", "4/7"]]})
    assert list(lattice_points(misprint)) == [(0, 0)]
    assert list(lattice_points(dilate(gk_triangle, 1))) != list(lattice_points(misprint))


if __name__ == "__main__":
    pytest.main([__file__, "-v", "-m", "regression_test"])
