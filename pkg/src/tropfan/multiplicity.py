"""Intersection multiplicities: lattice indices of complementary subspaces,
the component count l(V_S), and the multiplicity of a cone of the Severi
variety assembled from the cells and edges of its subdivision.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import NotComplementary, NotNodal, NotSimple, PreconditionViolated
from .geometry import Point, Segment, cross, lattice_length, lattice_points, primitive_vector
from .lattice import clear_denominators, determinant, hermite_normal_form, integer_kernel, torsion_order
from .linalg import rank
from .subdivision import (
    MarkedCell,
    Subdivision,
    edge_equivalence_classes,
    is_effective_subdivision,
    is_nodal,
    is_simple,
    special_points,
)


@dataclass(frozen=True)
class RationalSubspace:
    """Span of linearly independent rational vectors in Q^n."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        basis = tuple(tuple(Fraction(v) for v in b) for b in self.basis)
        if any(len(b) != self.ambient_dim for b in basis):
            raise ValueError(f"basis vectors must have length {self.ambient_dim}")
        if basis and rank(basis, self.ambient_dim) != len(basis):
            raise ValueError("basis vectors are linearly dependent")
        object.__setattr__(self, "basis", basis)

    @classmethod
    def span(cls, vectors: Sequence[Sequence]) -> "RationalSubspace":
        vectors = [list(v) for v in vectors]
        return cls(len(vectors[0]), tuple(tuple(v) for v in vectors))

    @property
    def dim(self) -> int:
        return len(self.basis)


def saturated_lattice_basis(L: RationalSubspace) -> list[list[int]]:
    """Basis of L ∩ Z^n in Hermite normal form.

    The integer points of L are the integer kernel of an integer basis of
    the orthogonal complement, which is itself an integer kernel.
    """
    n = L.ambient_dim
    if not L.basis:
        return []
    rows = [clear_denominators(b) for b in L.basis]
    complement = integer_kernel(rows, n)
    if not complement:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    return hermite_normal_form(integer_kernel(complement, n))


def principal_index(L1: RationalSubspace, L2: RationalSubspace) -> int:
    """Index of (L1 ∩ Z^n) ⊕ (L2 ∩ Z^n) in Z^n for complementary subspaces."""
    n = L1.ambient_dim
    if L2.ambient_dim != n:
        raise NotComplementary(f"ambient dimensions {n} and {L2.ambient_dim} differ")
    if L1.dim + L2.dim != n:
        raise NotComplementary(f"dimensions {L1.dim} + {L2.dim} != {n}")
    det = determinant(saturated_lattice_basis(L1) + saturated_lattice_basis(L2))
    if det == 0:
        raise NotComplementary("subspaces intersect nontrivially")
    return abs(det)


def transversal_multiplicity(L1: RationalSubspace, L2: RationalSubspace) -> int:
    """Intersection multiplicity ξ of two transversal tropical linear pieces
    with direction spaces L1 and L2."""
    return principal_index(L1, L2)


# -- l(V_S) ------------------------------------------------------------------------

@dataclass(frozen=True)
class ComponentCount:
    value: int
    source: str  # "computed" or "override"


def _parallelogram_relations(cell: MarkedCell, coord: dict[Point, int], size: int) -> list[list[int]]:
    """Exponent relations among the coefficients of a product of two binomial
    powers supported on the cell.

    The coefficient at corner + s·u + t·w (u, w the primitive sides) is a
    constant times K·λ^s·μ^t, so the relations are the integer vectors
    orthogonal to the exponent vectors (1, s, t).
    """
    v0, v1, _, v3 = cell.vertices
    u = primitive_vector(Segment(v0, v1))
    w = primitive_vector(Segment(v0, v3))
    p = lattice_length(Segment(v0, v1))
    q = lattice_length(Segment(v0, v3))
    pts = [((s, t), Point(v0[0] + s * u[0] + t * w[0], v0[1] + s * u[1] + t * w[1]))
           for s in range(p + 1) for t in range(q + 1)]
    exps = [[1, s, t] for (s, t), _ in pts]
    # relations r with sum_k r_k * exps[k] = 0
    transposed = [[e[i] for e in exps] for i in range(3)]
    out = []
    for rel in integer_kernel(transposed, len(pts)):
        row = [0] * size
        for r, (_, pt) in zip(rel, pts):
            row[coord[pt]] += r
        out.append(row)
    return out


def count_components_VS(S: Subdivision, override: Optional[int] = None) -> ComponentCount:
    """Number of components l(V_S) of the coefficient variety of S.

    Coordinates are the coefficients (cell, lattice point). The constraints
    are the binomial relations forced on each parallelogram cell and the
    agreement of coefficients along every shared edge; l(V_S) is the torsion
    order of the quotient of the coordinate lattice by these relations.
    Triangle cells contribute no constraints beyond edge agreement. An
    ``override`` is returned as is and marked as such.
    """
    if not is_effective_subdivision(S):
        raise PreconditionViolated("subdivision is not effective")
    if not is_nodal(S):
        raise NotNodal("some cell is neither a triangle nor a parallelogram")
    if not is_simple(S):
        raise NotSimple("some boundary lattice point is not a vertex")
    if override is not None:
        if override < 1:
            raise ValueError("l(V_S) must be a positive integer")
        return ComponentCount(int(override), "override")

    cells_pts: list[tuple[int, list[Point]]] = []
    for i, c in enumerate(S.cells):
        pts = lattice_points(c.vertices)
        if c.is_parallelogram:
            skip = set(special_points(c))
            pts = [p for p in pts if p not in skip]
        cells_pts.append((i, pts))
    coord: dict = {}
    for i, pts in cells_pts:
        for p in pts:
            coord[(i, p)] = len(coord)

    rows: list[list[int]] = []
    for i, c in enumerate(S.cells):
        if c.is_parallelogram:
            local = {p: coord[(i, p)] for p in cells_pts[i][1]}
            rows.extend(_parallelogram_relations(c, local, len(coord)))
    for e in S.interior_edges:
        i, j = S.edge_cells[e]
        for p in lattice_points_on(e):
            if (i, p) in coord and (j, p) in coord:
                row = [0] * len(coord)
                row[coord[(i, p)]] += 1
                row[coord[(j, p)]] -= 1
                rows.append(row)
    if not rows:
        return ComponentCount(1, "computed")
    return ComponentCount(torsion_order(rows), "computed")


def lattice_points_on(seg: Segment) -> list[Point]:
    (x0, y0), (x1, y1) = seg
    g = lattice_length(seg)
    dx, dy = (x1 - x0) // g, (y1 - y0) // g
    return [Point(x0 + k * dx, y0 + k * dy) for k in range(g + 1)]


# -- multiplicity formulas ------------------------------------------------------------

MODES = ("tilde", "full")


@dataclass(frozen=True)
class MultiplicityReport:
    mode: str
    triangle_factor: int  # product of twice the areas of triangle cells
    parallelogram_factor: int  # product of the areas of parallelogram cells
    edge_product_full: int  # product of lattice lengths of all edges
    edge_product_classes: int  # same, one edge per equivalence class
    l_vs: int
    l_vs_source: str
    value: Fraction


def severi_multiplicity(S: Subdivision, mode: str = "tilde", l_vs: Optional[int] = None) -> MultiplicityReport:
    """Multiplicity of the cone of S in the tropical Severi variety.

    ``tilde``: triangle factor / (l · product over edge classes).
    ``full``: triangle factor · parallelogram factor / (l · product over all
    edges); requires parallelograms without special points.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    count = count_components_VS(S, override=l_vs)
    parallelograms = [c for c in S.cells if c.is_parallelogram]
    if mode == "full" and any(special_points(c) for c in parallelograms):
        raise PreconditionViolated("a parallelogram cell has special points")

    tri = 1
    for c in S.cells:
        if c.is_triangle:
            tri *= c.twice_area
    para = 1
    for c in parallelograms:
        para *= abs(cross(c.vertices[0], c.vertices[1], c.vertices[3]))
    full_edges = 1
    for e in S.edges:
        full_edges *= lattice_length(e)
    class_edges = 1
    for cls in edge_equivalence_classes(S):
        class_edges *= lattice_length(cls[0])

    if mode == "tilde":
        value = Fraction(tri, count.value * class_edges)
    else:
        value = Fraction(tri * para, count.value * full_edges)
    return MultiplicityReport(
        mode=mode,
        triangle_factor=tri,
        parallelogram_factor=para,
        edge_product_full=full_edges,
        edge_product_classes=class_edges,
        l_vs=count.value,
        l_vs_source=count.source,
        value=value,
    )
