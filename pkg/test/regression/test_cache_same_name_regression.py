#!/usr/bin/env python3

import json

import pytest

from qehrhart import QEhrhart, load_polytope


@pytest.mark.regression_test
def test_same_name_different_vertices(tmp_path):
    """
    Discrepancy: two polytope files with the same "name" but different vertices could
    share a results cache entry.

    Category: Wrong cached result.
    Steps to reproduce:
    1. Compute q-Ehrhart rows for a unit square file named "shape".
    2. Compute rows with the same parameters for a triangle file also named "shape".
    Expected: the second run misses the cache and returns the triangle's rows.
    """
    cache_dir = tmp_path / "results"
    square_file = tmp_path / "a.json"
    square_file.write_text(json.dumps({"name": "shape", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}))
    triangle_file = tmp_path / "b.json"
    triangle_file.write_text(json.dumps({"name": "shape", "vertices": [[0, 0], [1, 0], [0, 1]]}))

    first = QEhrhart(load_polytope(square_file), cache_dir=cache_dir)
    assert first.q_ehrhart(1).rows == ((1,), (1, 2, 1))
    first.close()

    second = QEhrhart(load_polytope(triangle_file), cache_dir=cache_dir)
    assert second.q_ehrhart(1).rows == ((1,), (1, 2))
    assert len(list(second.results.entries())) == 2
    second.close()


if __name__ == "__main__":
    pytest.main([__file__, "-v", "-m", "regression_test"])
