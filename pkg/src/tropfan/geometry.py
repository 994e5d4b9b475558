"""Exact planar lattice geometry.

Points are integer pairs, heights are :class:`fractions.Fraction`. Nothing in
here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .errors import DegenerateInput


class Point(NamedTuple):
    x: int
    y: int


class Segment(NamedTuple):
    start: Point
    end: Point

    def canonical(self) -> "Segment":
        """Same segment with endpoints in lexicographic order."""
        if self.end < self.start:
            return Segment(self.end, self.start)
        return self


def as_point(p: Sequence[int]) -> Point:
    x, y = p
    if int(x) != x or int(y) != y:
        raise ValueError(f"not a lattice point: {p!r}")
    return Point(int(x), int(y))


def cross(o, a, b):
    """z-component of (a - o) x (b - o); positive for a left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Sequence[int]]) -> list[Point]:
    """Extreme points in counter-clockwise order, starting at the
    lexicographically smallest one.

    Points lying on an edge are dropped. Raises :class:`DegenerateInput` when
    the points do not span the plane.
    """
    pts = sorted({as_point(p) for p in points})
    if len(pts) < 3:
        raise DegenerateInput("need at least three distinct points")

    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateInput("points are collinear")
    return hull


def twice_polygon_area(vertices: Sequence[Sequence[int]]) -> int:
    """Twice the signed area (shoelace); positive for ccw input."""
    n = len(vertices)
    return sum(
        vertices[i][0] * vertices[(i + 1) % n][1] - vertices[(i + 1) % n][0] * vertices[i][1]
        for i in range(n)
    )


def twice_area(a, b, c) -> int:
    return abs(cross(a, b, c))


def contains(vertices: Sequence[Sequence[int]], p, strict: bool = False) -> bool:
    """Point-in-convex-polygon test for a ccw vertex list."""
    n = len(vertices)
    for i in range(n):
        c = cross(vertices[i], vertices[(i + 1) % n], p)
        if c < 0 or (strict and c == 0):
            return False
    return True


def on_segment(a, b, p, strict: bool = False) -> bool:
    """Whether p lies on the closed (or open, if ``strict``) segment ab."""
    if cross(a, b, p) != 0:
        return False
    if not (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])):
        return False
    if strict and (tuple(p) == tuple(a) or tuple(p) == tuple(b)):
        return False
    return True


def lattice_points(vertices: Sequence[Sequence[int]]) -> list[Point]:
    """All lattice points in the closed convex polygon, sorted."""
    xs = [v[0] for v in vertices]
    ys = [v[1] for v in vertices]
    return [
        Point(x, y)
        for x in range(min(xs), max(xs) + 1)
        for y in range(min(ys), max(ys) + 1)
        if contains(vertices, (x, y))
    ]


def boundary_lattice_points(vertices: Sequence[Sequence[int]]) -> list[Point]:
    n = len(vertices)
    out = set()
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        g = gcd(b[0] - a[0], b[1] - a[1])
        dx, dy = (b[0] - a[0]) // g, (b[1] - a[1]) // g
        for k in range(g):
            out.add(Point(a[0] + k * dx, a[1] + k * dy))
    return sorted(out)


def lattice_length(seg: Segment) -> int:
    (x0, y0), (x1, y1) = seg
    if (x0, y0) == (x1, y1):
        raise ValueError("segment endpoints coincide")
    return gcd(x1 - x0, y1 - y0)


def primitive_vector(seg: Segment) -> tuple[int, int]:
    (x0, y0), (x1, y1) = seg
    g = lattice_length(seg)
    return ((x1 - x0) // g, (y1 - y0) // g)


def primitive(vec: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g == 0:
        return tuple(vec)
    return tuple(v // g for v in vec)


def polygon_edges(vertices: Sequence[Point]) -> list[Segment]:
    n = len(vertices)
    return [Segment(vertices[i], vertices[(i + 1) % n]) for i in range(n)]


def is_parallelogram(vertices: Sequence[Sequence[int]]) -> bool:
    if len(vertices) != 4:
        return False
    a, b, c, d = vertices
    return (b[0] - a[0], b[1] - a[1]) == (c[0] - d[0], c[1] - d[1]) and (
        (c[0] - b[0], c[1] - b[1]) == (d[0] - a[0], d[1] - a[1])
    )


@dataclass(frozen=True)
class MarkedPolygon:
    """A non-degenerate convex lattice polygon with a marked point set.

    ``vertices`` are ccw from the lexicographic minimum; ``marks`` are sorted.
    Use :meth:`from_points` to build one from arbitrary input.
    """

    vertices: tuple[Point, ...]
    marks: tuple[Point, ...]

    def __post_init__(self):
        verts = tuple(as_point(v) for v in self.vertices)
        marks = tuple(sorted({as_point(m) for m in self.marks}))
        hull = tuple(convex_hull(verts))
        if hull != verts:
            raise DegenerateInput("vertices must be the ccw hull starting at the lexicographic minimum")
        if tuple(convex_hull(marks)) != verts:
            raise DegenerateInput("convex hull of the marks must be the polygon")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "marks", marks)

    @classmethod
    def from_points(cls, points, marks=None) -> "MarkedPolygon":
        """Polygon spanned by ``points``; marks default to all lattice points."""
        verts = convex_hull(points)
        if marks is None:
            marks = lattice_points(verts)
        return cls(tuple(verts), tuple(as_point(m) for m in marks))

    @cached_property
    def index(self) -> dict[Point, int]:
        return {m: i for i, m in enumerate(self.marks)}

    @property
    def n(self) -> int:
        return len(self.marks)

    @cached_property
    def lattice_points(self) -> tuple[Point, ...]:
        return tuple(lattice_points(self.vertices))

    @cached_property
    def boundary_points(self) -> tuple[Point, ...]:
        return tuple(boundary_lattice_points(self.vertices))

    @property
    def interior_point_count(self) -> int:
        return len(self.lattice_points) - len(self.boundary_points)

    @property
    def twice_area(self) -> int:
        return twice_polygon_area(self.vertices)


# -- lifted upper hull ------------------------------------------------------

class UpperFacet(NamedTuple):
    contact: tuple[int, ...]  # indices of lifted points on the facet plane
    normal: tuple[int, int, int]  # (nx, ny, nz) with nz > 0
    offset: int  # plane: nx*x + ny*y + nz*z == offset

    def height(self, p, scale: int = 1) -> Fraction:
        """Value of the facet plane above p, divided by ``scale``."""
        nx, ny, nz = self.normal
        return Fraction(self.offset - nx * p[0] - ny * p[1], nz * scale)


@lru_cache(maxsize=65536)
def upper_hull_facets(points: tuple[Point, ...], heights: tuple[int, ...]) -> tuple[UpperFacet, ...]:
    """Upper facets of conv{(p, h)} for integer heights.

    Every facet is reported once with its full contact set, so coplanar
    triangles come out merged. Quadratic in the number of facets times the
    number of points; meant for a few dozen points.
    """
    n = len(points)
    lifted = [(p[0], p[1], h) for p, h in zip(points, heights)]
    found: list[UpperFacet] = []
    covered: list[frozenset[int]] = []
    for i, j, k in combinations(range(n), 3):
        if any(i in c and j in c and k in c for c in covered):
            continue
        p, q, r = lifted[i], lifted[j], lifted[k]
        u = (q[0] - p[0], q[1] - p[1], q[2] - p[2])
        v = (r[0] - p[0], r[1] - p[1], r[2] - p[2])
        nz = u[0] * v[1] - u[1] * v[0]
        if nz == 0:
            continue
        nx = u[1] * v[2] - u[2] * v[1]
        ny = u[2] * v[0] - u[0] * v[2]
        if nz < 0:
            nx, ny, nz = -nx, -ny, -nz
        offset = nx * p[0] + ny * p[1] + nz * p[2]
        contact = []
        for idx, s in enumerate(lifted):
            val = nx * s[0] + ny * s[1] + nz * s[2]
            if val > offset:
                break
            if val == offset:
                contact.append(idx)
        else:
            g = gcd(gcd(nx, ny), gcd(nz, offset))
            found.append(UpperFacet(tuple(contact), (nx // g, ny // g, nz // g), offset // g))
            covered.append(frozenset(contact))
    return tuple(found)
