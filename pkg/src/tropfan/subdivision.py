"""Marked subdivisions of lattice polygons and the regular subdivision
induced by a height function."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import lcm
from typing import Mapping, Sequence

from .errors import BaseMismatch, InvalidSubdivision, NotParallelogram
from .geometry import (
    MarkedPolygon,
    Point,
    Segment,
    as_point,
    contains,
    convex_hull,
    cross,
    is_parallelogram,
    lattice_points,
    on_segment,
    polygon_edges,
    primitive_vector,
    twice_polygon_area,
    upper_hull_facets,
)


@dataclass(frozen=True)
class HeightFunction:
    """Rational heights on the marks of ``base``, modulo constants.

    ``values[i]`` is the height of ``base.marks[i]``. Values are shifted so
    that the first (lexicographically smallest) mark has height 0, which
    makes ``==`` the comparison modulo constant functions.
    """

    base: MarkedPolygon
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if len(vals) != self.base.n:
            raise ValueError(f"expected {self.base.n} heights, got {len(vals)}")
        shift = vals[0]
        object.__setattr__(self, "values", tuple(v - shift for v in vals))

    @classmethod
    def from_mapping(cls, base: MarkedPolygon, mapping: Mapping) -> "HeightFunction":
        lookup = {as_point(k): v for k, v in mapping.items()}
        missing = [m for m in base.marks if m not in lookup]
        if missing:
            raise ValueError(f"no height given for marks {missing}")
        extra = set(lookup) - set(base.marks)
        if extra:
            raise ValueError(f"heights given for unmarked points {sorted(extra)}")
        return cls(base, tuple(lookup[m] for m in base.marks))

    def __getitem__(self, point) -> Fraction:
        return self.values[self.base.index[as_point(point)]]

    def as_dict(self) -> dict[Point, Fraction]:
        return dict(zip(self.base.marks, self.values))

    @cached_property
    def scaled(self) -> tuple[int, tuple[int, ...]]:
        """``(L, h)`` with integer ``h = L * values``."""
        den = 1
        for v in self.values:
            den = lcm(den, v.denominator)
        return den, tuple(int(v * den) for v in self.values)


@dataclass(frozen=True, order=True)
class MarkedCell:
    """One marked polygon (Δ_i, A_i) of a subdivision."""

    vertices: tuple[Point, ...]
    marks: tuple[Point, ...]

    def __post_init__(self):
        verts = tuple(convex_hull(self.vertices))
        marks = tuple(sorted({as_point(m) for m in self.marks}))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "marks", marks)

    @property
    def edges(self) -> list[Segment]:
        return [e.canonical() for e in polygon_edges(self.vertices)]

    @property
    def twice_area(self) -> int:
        return twice_polygon_area(self.vertices)

    @property
    def is_triangle(self) -> bool:
        return len(self.vertices) == 3

    @property
    def is_parallelogram(self) -> bool:
        return is_parallelogram(self.vertices)


@dataclass(frozen=True)
class Subdivision:
    """A marked subdivision of ``base``; cells are kept in canonical order."""

    base: MarkedPolygon
    cells: tuple[MarkedCell, ...]

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(sorted(self.cells)))

    @cached_property
    def edges(self) -> tuple[Segment, ...]:
        return tuple(sorted({e for c in self.cells for e in c.edges}))

    @cached_property
    def edge_cells(self) -> dict[Segment, tuple[int, ...]]:
        """Indices of the cells having each edge as a side."""
        out: dict[Segment, list[int]] = {}
        for i, c in enumerate(self.cells):
            for e in c.edges:
                out.setdefault(e, []).append(i)
        return {e: tuple(v) for e, v in out.items()}

    @property
    def interior_edges(self) -> list[Segment]:
        return [e for e in self.edges if len(self.edge_cells[e]) == 2]

    @property
    def boundary_edges(self) -> list[Segment]:
        return [e for e in self.edges if len(self.edge_cells[e]) == 1]

    @cached_property
    def vertices(self) -> tuple[Point, ...]:
        return tuple(sorted({v for c in self.cells for v in c.vertices}))

    def validate(self) -> None:
        """Check the subdivision axioms; raise :class:`InvalidSubdivision`."""
        problems = subdivision_problems(self)
        if problems:
            raise InvalidSubdivision("; ".join(problems))


def subdivision_problems(S: Subdivision) -> list[str]:
    base = S.base
    marks = set(base.marks)
    problems = []
    for i, c in enumerate(S.cells):
        if not set(c.marks) <= marks:
            problems.append(f"cell {i} marks points outside A")
        if not set(c.vertices) <= set(c.marks):
            problems.append(f"cell {i} has unmarked vertices")
        if any(not contains(c.vertices, m) for m in c.marks):
            problems.append(f"cell {i} marks points outside the cell")
        if any(not contains(base.vertices, v) for v in c.vertices):
            problems.append(f"cell {i} leaves the polygon")
    if sum(c.twice_area for c in S.cells) != base.twice_area:
        problems.append("cell areas do not add up to the polygon area")
    for (i, a), (j, b) in combinations(enumerate(S.cells), 2):
        if not _interiors_disjoint(a.vertices, b.vertices):
            problems.append(f"cells {i} and {j} overlap")
            continue
        if _t_junction(a.vertices, b.vertices) or _t_junction(b.vertices, a.vertices):
            problems.append(f"cells {i} and {j} do not meet in a common face")
        on_a = {m for m in a.marks if contains(b.vertices, m)}
        on_b = {m for m in b.marks if contains(a.vertices, m)}
        if on_a != on_b:
            problems.append(f"cells {i} and {j} disagree on marks of their common face")
    return problems


def _interiors_disjoint(p, q) -> bool:
    for poly, other in ((p, q), (q, p)):
        n = len(poly)
        for k in range(n):
            a, b = poly[k], poly[(k + 1) % n]
            if all(cross(a, b, v) <= 0 for v in other):
                return True
    return False


def _t_junction(p, q) -> bool:
    """Some vertex of q sits in the relative interior of an edge of p."""
    n = len(p)
    return any(
        on_segment(p[k], p[(k + 1) % n], v, strict=True) for k in range(n) for v in q
    )


# -- regular subdivisions -------------------------------------------------------

def regular_subdivision(psi: HeightFunction) -> Subdivision:
    """Subdivision Δ_ψ: projections of the upper faces of the lifted marks.

    Marks of a cell are the marks whose lift lies on that face.
    """
    base = psi.base
    _, h = psi.scaled
    cells = []
    for facet in upper_hull_facets(base.marks, h):
        pts = [base.marks[i] for i in facet.contact]
        cells.append(MarkedCell(tuple(convex_hull(pts)), tuple(pts)))
    return Subdivision(base, tuple(cells))


def concave_hull_values(psi: HeightFunction) -> HeightFunction:
    """cc(ψ) restricted to the marks."""
    base = psi.base
    scale, h = psi.scaled
    facets = upper_hull_facets(base.marks, h)
    return HeightFunction(
        base, tuple(min(f.height(m, scale) for f in facets) for m in base.marks)
    )


def is_effective(psi: HeightFunction) -> bool:
    return concave_hull_values(psi) == psi


def is_effective_subdivision(S: Subdivision) -> bool:
    return all(tuple(lattice_points(c.vertices)) == c.marks for c in S.cells)


def refines(S: Subdivision, S2: Subdivision) -> bool:
    """Whether ``S`` refines ``S2``."""
    if S.base != S2.base:
        raise BaseMismatch("subdivisions of different marked polygons")
    for big in S2.cells:
        inside = [c for c in S.cells if all(contains(big.vertices, v) for v in c.vertices)]
        if sum(c.twice_area for c in inside) != big.twice_area:
            return False
        allowed = set(big.marks)
        if any(not set(c.marks) <= allowed for c in inside):
            return False
    return True


# -- classification -------------------------------------------------------------

def special_points(cell: MarkedCell) -> list[Point]:
    """Lattice points of a parallelogram outside the lattice spanned by the
    primitive side vectors, based at the first vertex."""
    if not cell.is_parallelogram:
        raise NotParallelogram(f"cell {cell.vertices} is not a parallelogram")
    v0, v1, _, v3 = cell.vertices
    pu = primitive_vector(Segment(v0, v1))
    pw = primitive_vector(Segment(v0, v3))
    det = cross((0, 0), pu, pw)
    out = []
    for p in lattice_points(cell.vertices):
        d = (p[0] - v0[0], p[1] - v0[1])
        if cross((0, 0), d, pw) % det or cross((0, 0), pu, d) % det:
            out.append(p)
    return out


def edge_equivalence_classes(S: Subdivision) -> tuple[tuple[Segment, ...], ...]:
    """Close "opposite sides of a parallelogram cell" under transitivity."""
    parent = {e: e for e in S.edges}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for c in S.cells:
        if c.is_parallelogram:
            e = [s.canonical() for s in polygon_edges(c.vertices)]
            for a, b in ((e[0], e[2]), (e[1], e[3])):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    classes: dict[Segment, list[Segment]] = {}
    for e in S.edges:
        classes.setdefault(find(e), []).append(e)
    return tuple(sorted(tuple(sorted(v)) for v in classes.values()))


@dataclass(frozen=True)
class ClassificationReport:
    is_effective: bool
    is_simple: bool
    is_nodal: bool
    # cell index -> special points, for parallelogram cells only
    special_points: dict[int, tuple[Point, ...]] = field(default_factory=dict)
    edge_classes: tuple[tuple[Segment, ...], ...] = ()

    @property
    def has_special_points(self) -> bool:
        return any(self.special_points.values())


def is_simple(S: Subdivision) -> bool:
    verts = set(S.vertices)
    return all(p in verts for p in S.base.boundary_points)


def is_nodal(S: Subdivision) -> bool:
    return all(c.is_triangle or c.is_parallelogram for c in S.cells)


def classify(S: Subdivision) -> ClassificationReport:
    return ClassificationReport(
        is_effective=is_effective_subdivision(S),
        is_simple=is_simple(S),
        is_nodal=is_nodal(S),
        special_points={
            i: tuple(special_points(c)) for i, c in enumerate(S.cells) if c.is_parallelogram
        },
        edge_classes=edge_equivalence_classes(S),
    )


def subdivision_from_cells(base: MarkedPolygon, cells: Sequence, validate: bool = True) -> Subdivision:
    """Build a subdivision from ``(vertices, marks)`` pairs; ``marks=None``
    marks every lattice point of the cell."""
    built = []
    for verts, marks in cells:
        verts = [as_point(v) for v in verts]
        if marks is None:
            marks = lattice_points(convex_hull(verts))
        built.append(MarkedCell(tuple(verts), tuple(as_point(m) for m in marks)))
    S = Subdivision(base, tuple(built))
    if validate:
        S.validate()
    return S
