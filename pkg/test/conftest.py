"""
Pytest configuration for qehrhart tests.

- Adds the parent directory to the Python path so tests import the working tree
- Turns on runtime argument type checking before qehrhart is imported
- Points QEHRHART_HOME at a per-test temp directory so logs, settings and the
  results cache never touch ~/.qehrhart
- Provides the polytope corpus as fixtures
"""
import os
import sys
from pathlib import Path

import pytest

# Must happen before the first qehrhart import: decorators read it at class creation
os.environ["QEHRHART_TYPECHECK"] = "1"

parent_dir = Path(__file__).parent.parent
if str(parent_dir) not in sys.path:
    sys.path.insert(0, str(parent_dir))

from qehrhart import FiltrationCache, builtin_polytope  # noqa: E402


def pytest_configure(config):
    """Register custom markers."""
    config.addinivalue_line(
        "markers", "pedantic: pedantic tests that verify edge cases (can be skipped with -m 'not pedantic')"
    )


@pytest.fixture(autouse=True)
def qehrhart_home(tmp_path, monkeypatch):
    """Isolated data directory for every test."""
    home = tmp_path / "qehrhart_home"
    monkeypatch.setenv("QEHRHART_HOME", str(home))
    monkeypatch.delenv("QEHRHART_CACHE_DIR", raising=False)
    return home


@pytest.fixture(scope="session")
def point():
    return builtin_polytope("point")


@pytest.fixture(scope="session")
def segment():
    return builtin_polytope("segment")


@pytest.fixture(scope="session")
def triangle():
    """Triangle with vertices (0,0), (2,1), (1,2)."""
    return builtin_polytope("triangle")


@pytest.fixture(scope="session")
def square():
    return builtin_polytope("square")


@pytest.fixture(scope="session")
def gk_triangle():
    """Rational triangle (0,0), (2/15,16/15), (-6/7,4/7)."""
    return builtin_polytope("gk-triangle")


@pytest.fixture(scope="session")
def gk_cache():
    """Filtrations of the GK triangle are shared across tests."""
    return FiltrationCache()


@pytest.fixture(scope="session")
def corpus(point, segment, triangle, square, gk_triangle):
    return {"point": point, "segment": segment, "triangle": triangle, "square": square, "gk-triangle": gk_triangle}
