"""Tropical plane curves dual to regular subdivisions, and point conditions.

The curve of ψ is the corner locus of x ↦ max_a (a·x + ψ(a)). Its vertices,
edges and complement regions correspond to the cells, edges and vertices of
the subdivision induced by the concave hull of ψ.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import NamedTuple, Sequence

from .errors import EdgeNotInSubdivision, PreconditionViolated
from .fan import secondary_cone
from .geometry import Point, Segment, as_point, lattice_length, polygon_edges, primitive
from .linalg import rank as matrix_rank
from .linalg import relative_interior
from .subdivision import (
    HeightFunction,
    MarkedCell,
    Subdivision,
    concave_hull_values,
    is_effective_subdivision,
    regular_subdivision,
)

RationalPoint = tuple[Fraction, Fraction]


def as_rational_point(x) -> RationalPoint:
    a, b = x
    return Fraction(a), Fraction(b)


class BoundedEdge(NamedTuple):
    start: int  # curve vertex indices, start < end
    end: int
    weight: int
    dual: Segment


class Ray(NamedTuple):
    vertex: int
    direction: tuple[int, int]  # primitive
    weight: int
    dual: Segment


@dataclass(frozen=True)
class TropicalCurve:
    """Vertices, weighted bounded edges and weighted rays of a tropical curve.

    ``vertices[i]`` is dual to ``cells[i]``; each edge and ray records the
    subdivision edge it is dual to.
    """

    vertices: tuple[RationalPoint, ...]
    bounded_edges: tuple[BoundedEdge, ...]
    rays: tuple[Ray, ...]
    cells: tuple[MarkedCell, ...]

    def outgoing(self, i: int) -> list[tuple[tuple[int, int], int]]:
        """Primitive outgoing directions with weights at vertex ``i``."""
        out = []
        for e in self.bounded_edges:
            if i in (e.start, e.end):
                other = e.end if i == e.start else e.start
                d = _primitive_rational(self.vertices[i], self.vertices[other])
                out.append((d, e.weight))
        out.extend((r.direction, r.weight) for r in self.rays if r.vertex == i)
        return out


def _primitive_rational(p: RationalPoint, q: RationalPoint) -> tuple[int, int]:
    dx, dy = q[0] - p[0], q[1] - p[1]
    den = dx.denominator * dy.denominator
    return primitive((int(dx * den), int(dy * den)))


# -- evaluation -----------------------------------------------------------------

def eval_tropical(psi: HeightFunction, x) -> tuple[Fraction, tuple[Point, ...]]:
    """max_a (a·x + ψ(a)) and the marks attaining it."""
    x0, x1 = as_rational_point(x)
    vals = [(a[0] * x0 + a[1] * x1 + v, a) for a, v in zip(psi.base.marks, psi.values)]
    best = max(v for v, _ in vals)
    return best, tuple(a for v, a in vals if v == best)


def on_curve(psi: HeightFunction, x) -> bool:
    return len(eval_tropical(psi, x)[1]) >= 2


def point_hyperplane_contains(q, psi: HeightFunction) -> bool:
    """Whether ψ lies on the tropical hyperplane of the point ``q``, that is,
    whether the curve of ψ passes through q."""
    return on_curve(psi, q)


# -- duality --------------------------------------------------------------------

def _cell_vertex(cell: MarkedCell, values: dict[Point, Fraction]) -> RationalPoint:
    """The point where all marks of the cell tie for the maximum.

    On the cell the concave hull is affine, c + g·a, so the tie point is -g.
    """
    p, q, r = cell.vertices[:3]
    hp, hq, hr = values[p], values[q], values[r]
    # Solve g·(q-p) = hq-hp, g·(r-p) = hr-hp.
    u = (q[0] - p[0], q[1] - p[1])
    w = (r[0] - p[0], r[1] - p[1])
    det = u[0] * w[1] - u[1] * w[0]
    du, dw = hq - hp, hr - hp
    gx = Fraction(du * w[1] - dw * u[1], det)
    gy = Fraction(u[0] * dw - w[0] * du, det)
    return -gx, -gy


def dual_curve(psi: HeightFunction) -> TropicalCurve:
    """The tropical curve of ψ, built from the subdivision of cc(ψ)."""
    cc = concave_hull_values(psi)
    S = regular_subdivision(cc)
    values = cc.as_dict()
    vertices = tuple(_cell_vertex(c, values) for c in S.cells)
    for v, c in zip(vertices, S.cells):
        _, arg = eval_tropical(cc, v)
        if not set(c.marks) <= set(arg):
            raise AssertionError(f"marks of {c.vertices} do not tie at {v}")

    bounded, rays = [], []
    for i, c in enumerate(S.cells):
        for side in polygon_edges(c.vertices):
            e = side.canonical()
            owners = S.edge_cells[e]
            w = lattice_length(e)
            if len(owners) == 2:
                j = owners[0] if owners[1] == i else owners[1]
                if i < j:
                    bounded.append(BoundedEdge(i, j, w, e))
            else:
                # outward normal of a ccw side a -> b is (dy, -dx)
                (ax, ay), (bx, by) = side
                rays.append(Ray(i, primitive((by - ay, ax - bx)), w, e))
    return TropicalCurve(vertices, tuple(sorted(bounded)), tuple(sorted(rays)), S.cells)


def balancing_defects(curve: TropicalCurve) -> list[int]:
    """Vertices where the weighted primitive outgoing directions do not sum to 0."""
    bad = []
    for i in range(len(curve.vertices)):
        sx = sy = 0
        for (dx, dy), w in curve.outgoing(i):
            sx += w * dx
            sy += w * dy
        if (sx, sy) != (0, 0):
            bad.append(i)
    return bad


def orthogonality_defects(curve: TropicalCurve) -> list[BoundedEdge]:
    """Bounded edges not orthogonal to their dual subdivision edge."""
    bad = []
    for e in curve.bounded_edges:
        d = _primitive_rational(curve.vertices[e.start], curve.vertices[e.end])
        (ax, ay), (bx, by) = e.dual
        if d[0] * (bx - ax) + d[1] * (by - ay) != 0:
            bad.append(e)
    return bad


def _region_witnesses(psi: HeightFunction, curve: TropicalCurve) -> dict[Point, RationalPoint]:
    """For each subdivision vertex, a point where it alone attains the max.

    Interior vertices: the average of the curve vertices around the bounded
    region. Boundary vertices: that average pushed far out along the sum of
    the outward normals of the rays next to it.
    """
    S_verts = {v for c in curve.cells for v in c.vertices}
    around: dict[Point, list[int]] = {}
    for i, c in enumerate(curve.cells):
        for v in c.vertices:
            around.setdefault(v, []).append(i)
    push: dict[Point, list[int]] = {}
    for r in curve.rays:
        for a in r.dual:
            d = push.setdefault(a, [0, 0])
            d[0] += r.direction[0]
            d[1] += r.direction[1]
    xs = [v[0] for v in curve.vertices]
    ys = [v[1] for v in curve.vertices]
    reach = 1 + (max(xs) - min(xs)) + (max(ys) - min(ys))
    out = {}
    for a in sorted(S_verts):
        idx = around[a]
        cx = sum(curve.vertices[i][0] for i in idx) / len(idx)
        cy = sum(curve.vertices[i][1] for i in idx) / len(idx)
        if a in push:
            dx, dy = push[a]
            cx, cy = cx + 4 * reach * dx, cy + 4 * reach * dy
        out[a] = (Fraction(cx), Fraction(cy))
    return out


def complement_regions(psi: HeightFunction, steps: int = 40) -> set[Point]:
    """Labels (unique maximizing marks) of the regions of R² minus the curve.

    Combines one witness point per expected region with a sample grid
    of ``steps + 1`` points per side covering the vertex bounding box plus
    two units on each side.
    """
    curve = dual_curve(psi)
    labels = set()
    for x in _region_witnesses(psi, curve).values():
        _, arg = eval_tropical(psi, x)
        if len(arg) == 1:
            labels.add(arg[0])
    xs = [v[0] for v in curve.vertices]
    ys = [v[1] for v in curve.vertices]
    lo_x, hi_x = min(xs) - 2, max(xs) + 2
    lo_y, hi_y = min(ys) - 2, max(ys) + 2
    for i, j in product(range(steps + 1), repeat=2):
        # offset by an odd fraction to stay off most rational walls
        x = (lo_x + (hi_x - lo_x) * Fraction(2 * i + 1, 2 * steps + 3),
             lo_y + (hi_y - lo_y) * Fraction(2 * j + 1, 2 * steps + 5))
        _, arg = eval_tropical(psi, x)
        if len(arg) == 1:
            labels.add(arg[0])
    return labels


# -- point conditions -------------------------------------------------------------

@dataclass(frozen=True)
class PointCondition:
    q: RationalPoint

    def __post_init__(self):
        object.__setattr__(self, "q", as_rational_point(self.q))


@dataclass(frozen=True)
class PointConditionSystem:
    """Rows r and right-hand sides c of the affine equations r·ψ = c."""

    rows: tuple[tuple[int, ...], ...]
    rhs: tuple[Fraction, ...]
    independent: bool


def point_condition_system(S: Subdivision, assignment: Sequence) -> PointConditionSystem:
    """Equations ψ(a) - ψ(a') = (a' - a)·q for edges aa' assigned to points q."""
    idx = S.base.index
    edges = set(S.edges)
    rows, rhs = [], []
    for seg, q in assignment:
        a, b = as_point(seg[0]), as_point(seg[1])
        if Segment(a, b).canonical() not in edges:
            raise EdgeNotInSubdivision(f"{a}-{b} is not an edge of the subdivision")
        q = q.q if isinstance(q, PointCondition) else as_rational_point(q)
        row = [0] * S.base.n
        row[idx[a]] += 1
        row[idx[b]] -= 1
        rows.append(tuple(row))
        rhs.append((b[0] - a[0]) * q[0] + (b[1] - a[1]) * q[1])
    independent = matrix_rank(rows, S.base.n) == len(rows) if rows else True
    return PointConditionSystem(tuple(rows), tuple(rhs), independent)


def s_general_position(S: Subdivision, points: Sequence) -> bool:
    """Whether the points cut C(S) in the empty set or in codimension len(points).

    Each point must lie on the curve, hence on some edge dual to an edge of S;
    every choice of edges is a branch, and each nonempty branch must have the
    expected codimension.
    """
    if not is_effective_subdivision(S):
        raise PreconditionViolated("subdivision is not effective")
    cone = secondary_cone(S)
    full = cone.relint.dimension
    qs = [p.q if isinstance(p, PointCondition) else as_rational_point(p) for p in points]
    edges = S.edges

    def branch(assigned: list) -> bool:
        if assigned:
            system = point_condition_system(S, [(edges[k], qs[n]) for n, k in enumerate(assigned)])
            ri = relative_interior(
                S.base.n,
                list(cone.equalities) + list(system.rows),
                [0] * len(cone.equalities) + list(system.rhs),
                cone.inequalities,
                (),
            )
            if ri is None:
                return True
            if ri.dimension != full - len(assigned):
                return False
        if len(assigned) == len(qs):
            return True
        return all(branch(assigned + [k]) for k in range(len(edges)))

    return branch([])


def random_general_points(
    S: Subdivision, count: int, rng: random.Random, max_den: int = 7, tries: int = 100
) -> list[RationalPoint]:
    """Random rational points in S-general position, by rejection sampling."""
    for _ in range(tries):
        pts = [
            (Fraction(rng.randint(-50, 50), rng.randint(1, max_den)),
             Fraction(rng.randint(-50, 50), rng.randint(1, max_den)))
            for _ in range(count)
        ]
        if s_general_position(S, pts):
            return pts
    raise RuntimeError(f"no points in general position after {tries} tries")


def curve_through(psi: HeightFunction, points: Sequence) -> bool:
    """Whether the curve of ψ passes through every point."""
    return all(on_curve(psi, p) for p in points)
