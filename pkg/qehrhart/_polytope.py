"""
Rational convex polytopes: parsing, facet derivation, dilation and lattice points.

V-representation is canonical. Facets (H-representation) are derived for points,
segments, 2-dimensional polygons and n-simplices; every other shape is rejected.
Facet normals are primitive integer vectors, offsets are rational, and a facet
(a, b) means a . x <= b.

The rational triangle `gk-triangle` has second vertex (2/15, 16/15). The variant
(2/15, 6/15) also circulates, but only (2/15, 16/15) matches the integral model
(0,0), (7,56), (-45,30): 105 * (2/15, 16/15) = (14, 112) = 2 * (7, 56).
"""
from __future__ import annotations

import itertools
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from ._budget import DEFAULT_BUDGET, ComputeBudget
from ._exactlin import RationalMatrix, kernel_basis, rank
from ._type_check import typecheck_methods

Vector = Tuple[Fraction, ...]
IntVector = Tuple[int, ...]
Facet = Tuple[IntVector, Fraction]


class PolytopeFormatError(ValueError):
    """The polytope document does not match the schema."""


class UnsupportedPolytopeError(ValueError):
    """Facets cannot be derived for this shape."""


def _parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise PolytopeFormatError(f"{where}: expected an integer or 'p/q' string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise PolytopeFormatError(f"{where}: malformed rational {value!r}") from e
    raise PolytopeFormatError(f"{where}: expected an integer or 'p/q' string, got {type(value).__name__}")


def _primitive(normal: Sequence[Fraction], offset: Fraction) -> Facet:
    """Scale (normal, offset) by a positive factor so the normal is a primitive integer vector."""
    lcm = 1
    for x in normal:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in normal]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        raise UnsupportedPolytopeError("degenerate facet with zero normal")
    return tuple(x // g for x in ints), Fraction(offset) * lcm / g


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def _cross(o: Vector, a: Vector, b: Vector) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _convex_hull_2d(points: Sequence[Vector]) -> List[Vector]:
    """Hull vertices in counterclockwise order (monotone chain, exact), collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: List[Vector] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Vector] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _point_facets(v: Vector) -> List[Facet]:
    facets = []
    for i in range(len(v)):
        unit = tuple(1 if j == i else 0 for j in range(len(v)))
        facets.append((unit, v[i]))
        facets.append((tuple(-x for x in unit), -v[i]))
    return facets


def _polygon_facets(vertices: Sequence[Vector]) -> List[Facet]:
    hull = _convex_hull_2d(vertices)
    if len(hull) < 3:
        raise UnsupportedPolytopeError("collinear vertices do not span a polygon")
    facets = []
    for a, b in zip(hull, hull[1:] + hull[:1]):
        # Interior lies to the left of a counterclockwise edge
        normal = (b[1] - a[1], a[0] - b[0])
        facets.append(_primitive(normal, _dot(normal, a)))
    return facets


def _simplex_facets(vertices: Sequence[Vector]) -> List[Facet]:
    n = len(vertices[0])
    base = vertices[0]
    if rank(RationalMatrix([[x - y for x, y in zip(v, base)] for v in vertices[1:]], n)) != n:
        raise UnsupportedPolytopeError("simplex vertices are not affinely independent")
    facets = []
    for omit in range(n + 1):
        rest = [v for i, v in enumerate(vertices) if i != omit]
        directions = RationalMatrix([[x - y for x, y in zip(v, rest[0])] for v in rest[1:]], n)
        normal = kernel_basis(directions).row(0)
        offset = _dot(normal, rest[0])
        if _dot(normal, vertices[omit]) > offset:
            normal = tuple(-x for x in normal)
            offset = -offset
        facets.append(_primitive(normal, offset))
    return facets


def derive_facets(vertices: Sequence[Vector]) -> List[Facet]:
    """H-representation for the supported shapes."""
    n = len(vertices[0])
    distinct = sorted(set(vertices))
    if len(distinct) == 1:
        return _point_facets(distinct[0])
    if n == 1:
        lo, hi = distinct[0][0], distinct[-1][0]
        return [((1,), hi), ((-1,), -lo)]
    if n == 2:
        return _polygon_facets(distinct)
    if len(distinct) == n + 1:
        return _simplex_facets(distinct)
    raise UnsupportedPolytopeError(
        f"facets are only derived for polygons and simplices; got {len(distinct)} vertices in dimension {n}")


@typecheck_methods
class Polytope:
    """Convex polytope given by rational vertices, with derived facets."""

    def __init__(self, vertices: Sequence[Sequence[Fraction]], facets: Optional[Sequence[Facet]] = None,
                 name: str = ""):
        """Args:    vertices: Nonempty list of rational n-vectors
                 facets: Precomputed (normal, offset) pairs; derived when omitted
                 name: Label used in reports and cache keys"""
        if not vertices:
            raise PolytopeFormatError("a polytope needs at least one vertex")
        self.vertices: Tuple[Vector, ...] = tuple(tuple(Fraction(x) for x in v) for v in vertices)
        self.dim = len(self.vertices[0])
        if self.dim < 1:
            raise PolytopeFormatError("vertices must have at least one coordinate")
        for i, v in enumerate(self.vertices):
            if len(v) != self.dim:
                raise PolytopeFormatError(f"vertex {i} has {len(v)} coordinates, expected {self.dim}")
        if facets is None:
            facets = derive_facets(self.vertices)
        self.facets: Tuple[Facet, ...] = tuple((tuple(a), Fraction(b)) for a, b in facets)
        self.name = name

    def contains(self, point: Sequence[Fraction]) -> bool:
        """Exact membership test against every facet inequality."""
        return all(_dot(normal, point) <= offset for normal, offset in self.facets)

    @property
    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    def bounding_box(self) -> List[Tuple[int, int]]:
        """Integer ranges [ceil(min), floor(max)] per coordinate."""
        box = []
        for i in range(self.dim):
            coords = [v[i] for v in self.vertices]
            box.append((math.ceil(min(coords)), math.floor(max(coords))))
        return box

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "vertices": [[str(x) for x in v] for v in self.vertices],
            "facets": [{"normal": list(a), "offset": str(b)} for a, b in self.facets],
        }

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.vertices == other.vertices and set(self.facets) == set(other.facets)

    def __hash__(self):
        return hash((self.vertices, frozenset(self.facets)))

    def __repr__(self):
        verts = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.vertices)
        label = f"{self.name}: " if self.name else ""
        return f"Polytope({label}{verts})"


class LatticePointSet:
    """Sorted, duplicate-free integer points of a fixed dimension."""

    def __init__(self, dim: int, points: Sequence[Sequence[int]]):
        self.dim = dim
        self.points: Tuple[IntVector, ...] = tuple(sorted({tuple(int(x) for x in p) for p in points}))
        for p in self.points:
            if len(p) != dim:
                raise ValueError(f"point {p} does not have {dim} coordinates")

    def __len__(self):
        return len(self.points)

    def __iter__(self) -> Iterator[IntVector]:
        return iter(self.points)

    def __contains__(self, p):
        return tuple(p) in set(self.points)

    def __eq__(self, other):
        if not isinstance(other, LatticePointSet):
            return NotImplemented
        return self.dim == other.dim and self.points == other.points

    def __hash__(self):
        return hash((self.dim, self.points))

    def min_corner(self) -> IntVector:
        """Componentwise minimum, used to shift the set into the nonnegative orthant."""
        if not self.points:
            return (0,) * self.dim
        return tuple(min(p[i] for p in self.points) for i in range(self.dim))

    def translate(self, v: Sequence[int]) -> 'LatticePointSet':
        return LatticePointSet(self.dim, [tuple(a + b for a, b in zip(p, v)) for p in self.points])

    def to_dict(self) -> Dict:
        return {"dim": self.dim, "count": len(self.points), "points": [list(p) for p in self.points]}

    def __repr__(self):
        return f"LatticePointSet({self.dim}, {list(self.points)})"


def parse_polytope(document: Union[str, Mapping], name: str = "") -> Polytope:
    """Build a Polytope from the JSON schema {"dim": n, "vertices": [[...], ...]}.
    Args:    document: JSON text or an already-decoded mapping
             name: Fallback label when the document has no "name"
    Raises:  PolytopeFormatError, UnsupportedPolytopeError"""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as e:
            raise PolytopeFormatError(f"not valid JSON: {e}") from e
    if not isinstance(document, Mapping):
        raise PolytopeFormatError("polytope document must be an object")
    if "vertices" not in document:
        raise PolytopeFormatError("missing 'vertices'")
    raw = document["vertices"]
    if not isinstance(raw, list) or not raw:
        raise PolytopeFormatError("'vertices' must be a nonempty list")
    dim = document.get("dim", len(raw[0]) if isinstance(raw[0], list) else None)
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise PolytopeFormatError(f"'dim' must be a positive integer, got {dim!r}")
    vertices = []
    for i, v in enumerate(raw):
        if not isinstance(v, list):
            raise PolytopeFormatError(f"vertex {i} must be a list")
        if len(v) != dim:
            raise PolytopeFormatError(f"vertex {i} has {len(v)} coordinates, expected {dim}")
        vertices.append([_parse_rational(x, f"vertex {i}") for x in v])
    return Polytope(vertices, name=str(document.get("name", name)))


def load_polytope(path: Path) -> Polytope:
    """Read a polytope JSON file."""
    path = Path(path)
    return parse_polytope(path.read_text(encoding="utf-8"), name=path.stem)


BUILTIN_POLYTOPES: Dict[str, Dict] = {
    "point": {"dim": 1, "vertices": [[0]]},
    "segment": {"dim": 1, "vertices": [[0], [1]]},
    "triangle": {"dim": 2, "vertices": [[0, 0], [2, 1], [1, 2]]},
    "square": {"dim": 2, "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]},
    "gk-triangle": {"dim": 2, "vertices": [["0", "0"], ["2/15", "16/15"], ["-6/7", "4/7"]]},
    "gk-integral": {"dim": 2, "vertices": [[0, 0], [7, 56], [-45, 30]]},
}


def builtin_polytope(name: str) -> Polytope:
    if name not in BUILTIN_POLYTOPES:
        raise PolytopeFormatError(f"unknown builtin polytope {name!r}; choose from {sorted(BUILTIN_POLYTOPES)}")
    return parse_polytope(BUILTIN_POLYTOPES[name], name=name)


def dilate(P: Polytope, m: Union[int, Fraction]) -> Polytope:
    """mP: vertices scaled by m, facet offsets scaled by m, normals unchanged."""
    m = Fraction(m)
    if m < 0:
        raise ValueError(f"dilation factor must be nonnegative, got {m}")
    vertices = [[m * x for x in v] for v in P.vertices]
    facets = [(normal, m * offset) for normal, offset in P.facets]
    label = P.name if m == 1 else f"{P.name}*{m}" if P.name else ""
    return Polytope(vertices, facets, name=label)


def lattice_points(P: Polytope, budget: ComputeBudget = DEFAULT_BUDGET) -> LatticePointSet:
    """Integer points of P by a bounding-box scan with exact membership tests."""
    box = P.bounding_box()
    if any(lo > hi for lo, hi in box):
        return LatticePointSet(P.dim, [])
    budget.check_candidates(math.prod(hi - lo + 1 for lo, hi in box))
    ranges = [range(lo, hi + 1) for lo, hi in box]
    return LatticePointSet(P.dim, [p for p in itertools.product(*ranges) if P.contains(p)])


def ehrhart_series(P: Polytope, m_max: int, budget: ComputeBudget = DEFAULT_BUDGET) -> List[int]:
    """|mP cap Z^n| for m = 0..m_max."""
    if m_max < 0:
        raise ValueError(f"m_max must be nonnegative, got {m_max}")
    return [len(lattice_points(dilate(P, m), budget)) for m in range(m_max + 1)]
