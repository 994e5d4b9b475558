"""Secondary cones and the secondary fan of a marked polygon."""
from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Optional, Sequence

from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    EmptyCone,
    PreconditionViolated,
    UnderMarkedCell,
)
from .geometry import MarkedPolygon, cross
from .linalg import RelativeInterior, dot, integer_form, relative_interior
from .subdivision import (
    HeightFunction,
    Subdivision,
    classify,
    concave_hull_values,
    is_effective,
    is_effective_subdivision,
    regular_subdivision,
)

DEFAULT_MAX_MARKS = 12
DEFAULT_BUDGET = 5000


class Membership(str, enum.Enum):
    OUTSIDE = "outside"
    BOUNDARY = "boundary"
    RELATIVE_INTERIOR = "relative_interior"


@dataclass(frozen=True)
class SecondaryCone:
    """H-representation of a cone in R^A.

    Points ψ of the cone satisfy ``e . ψ == 0`` for every row of
    ``equalities`` and ``g . ψ >= 0`` for every row of ``inequalities``.
    Rows are primitive integer vectors indexed like ``base.marks``.
    """

    base: MarkedPolygon
    equalities: tuple[tuple[int, ...], ...]
    inequalities: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.base.n

    @cached_property
    def relint(self) -> RelativeInterior:
        ri = relative_interior(self.n, self.equalities, (), self.inequalities, ())
        if ri is None:
            raise EmptyCone("constraint system is infeasible")
        ones = [1] * self.n
        hull_eqs = list(self.equalities) + [self.inequalities[i] for i in ri.implicit]
        if any(dot(e, ones) != 0 for e in hull_eqs):
            raise EmptyCone("cone does not contain the constant functions")
        return ri

    @property
    def lineality_contains_ones(self) -> bool:
        ones = [1] * self.n
        return all(dot(e, ones) == 0 for e in self.equalities + self.inequalities)


def _vector(psi, n: int) -> list[Fraction]:
    values = psi.values if isinstance(psi, HeightFunction) else psi
    if len(values) != n:
        raise DimensionMismatch(f"expected a vector of length {n}, got {len(values)}")
    return [Fraction(v) for v in values]


def _affine_triple(cell):
    """Three non-collinear marks of a cell, preferring its vertices."""
    if set(cell.vertices[:3]) <= set(cell.marks):
        return cell.vertices[:3]
    for p, q, r in combinations(cell.marks, 3):
        c = cross(p, q, r)
        if c > 0:
            return p, q, r
        if c < 0:
            return p, r, q
    raise UnderMarkedCell(f"cell {cell.vertices} has no three non-collinear marks")


@lru_cache(maxsize=4096)
def secondary_cone(S: Subdivision) -> SecondaryCone:
    """The cone C(S) of heights ψ for which S refines Δ_ψ.

    Each cell carries the affine function through three of its marks; the
    heights at the cell's marks must agree with it and no mark may rise
    above it.
    """
    base = S.base
    idx = base.index
    n = base.n
    eqs: set[tuple[int, ...]] = set()
    ineqs: set[tuple[int, ...]] = set()
    for cell in S.cells:
        p, q, r = _affine_triple(cell)
        D = cross(p, q, r)
        cell_marks = set(cell.marks)
        for a in base.marks:
            if a in (p, q, r):
                continue
            # barycentric weights of a, scaled by D
            s = (a[0] - p[0]) * (r[1] - p[1]) - (a[1] - p[1]) * (r[0] - p[0])
            t = (q[0] - p[0]) * (a[1] - p[1]) - (q[1] - p[1]) * (a[0] - p[0])
            row = [0] * n
            row[idx[p]] += D - s - t
            row[idx[q]] += s
            row[idx[r]] += t
            row[idx[a]] -= D
            form = integer_form(row)
            if not any(form):
                continue
            if a in cell_marks:
                lead = next(v for v in form if v)
                eqs.add(form if lead > 0 else tuple(-v for v in form))
            else:
                ineqs.add(form)
    return SecondaryCone(base, tuple(sorted(eqs)), tuple(sorted(ineqs)))


def cone_dim(C: SecondaryCone) -> int:
    """Dimension of C in R^A / R·1."""
    return C.relint.dimension - 1


def relative_interior_point(C: SecondaryCone) -> tuple[Fraction, ...]:
    return tuple(C.relint.point)


def membership(C: SecondaryCone, psi) -> Membership:
    x = _vector(psi, C.n)
    if any(dot(e, x) != 0 for e in C.equalities):
        return Membership.OUTSIDE
    implicit = C.relint.implicit
    on_boundary = False
    for i, g in enumerate(C.inequalities):
        v = dot(g, x)
        if v < 0:
            return Membership.OUTSIDE
        if v == 0 and i not in implicit:
            on_boundary = True
    return Membership.BOUNDARY if on_boundary else Membership.RELATIVE_INTERIOR


def rank(psi: HeightFunction) -> int:
    """Quotient dimension of the cone of the effective subdivision Δ_cc(ψ)."""
    return cone_dim(secondary_cone(regular_subdivision(concave_hull_values(psi))))


# -- facets and the census --------------------------------------------------------

@dataclass(frozen=True)
class Face:
    inequality: int  # index into the parent cone's inequalities
    point: tuple[Fraction, ...]  # relative-interior point of the face
    dimension: int  # quotient dimension


def facets(C: SecondaryCone) -> list[Face]:
    """Facets of C, each with a relative-interior point."""
    ri = C.relint
    out: list[Face] = []
    covered: set[int] = set()
    for j, g in enumerate(C.inequalities):
        if j in ri.implicit or j in covered:
            continue
        face = relative_interior(
            C.n, list(C.equalities) + [g], (), C.inequalities, (), strict_only=True
        )
        if face is None or face.dimension != ri.dimension - 1:
            continue
        covered |= face.implicit
        out.append(Face(j, tuple(face.point), face.dimension - 1))
    return out


def random_heights(base: MarkedPolygon, rng: random.Random, coarse: bool = False) -> HeightFunction:
    """Random rational heights; ``coarse`` draws small integers so that
    degenerate (lower-dimensional) cones are hit often."""
    if coarse:
        vals = [rng.randint(-2, 2) for _ in base.marks]
    else:
        vals = [Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 997)) for _ in base.marks]
    return HeightFunction(base, tuple(vals))


@dataclass(frozen=True)
class CensusEntry:
    subdivision: Subdivision
    cone: SecondaryCone
    dimension: int
    effective: bool
    interior_point: tuple[Fraction, ...]


@dataclass(frozen=True)
class CompletenessCertificate:
    """Outcome of checking random heights against the census."""

    seed: int
    samples: int
    failures: int
    distinct_hits: int


@dataclass(frozen=True)
class FanCensus:
    base: MarkedPolygon
    entries: tuple[CensusEntry, ...]
    certificate: CompletenessCertificate

    @property
    def effective_entries(self) -> tuple[CensusEntry, ...]:
        return tuple(e for e in self.entries if e.effective)

    def locate(self, psi) -> list[CensusEntry]:
        """Entries whose cone has ``psi`` in its relative interior."""
        return [e for e in self.entries if membership(e.cone, psi) is Membership.RELATIVE_INTERIOR]


def _cross_facet(S: Subdivision, face: Face, g: Sequence[int]) -> Optional[Subdivision]:
    """Maximal cone on the other side of a facet of C(S)."""
    base = S.base
    full = base.n - 1
    eps = Fraction(1)
    for _ in range(80):
        psi = HeightFunction(base, tuple(p - eps * gi for p, gi in zip(face.point, g)))
        T = regular_subdivision(psi)
        if T != S:
            CT = secondary_cone(T)
            if cone_dim(CT) == full and membership(CT, face.point) is not Membership.OUTSIDE:
                return T
        eps /= 2
    return None


def enumerate_effective_subdivisions(
    base: MarkedPolygon,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    samples: int = 200,
    max_marks: int = DEFAULT_MAX_MARKS,
) -> FanCensus:
    """Census of the secondary fan of ``base``.

    Walks across walls between maximal cones starting from a random chamber,
    and collects every face met on the way. All coherent subdivisions are
    recorded; :attr:`FanCensus.effective_entries` are the effective ones.
    ``samples`` random heights are then located in the census as a
    completeness check.
    """
    if base.n > max_marks:
        raise BudgetExceeded(f"{base.n} marks exceeds the limit of {max_marks}")
    rng = random.Random(seed)
    full = base.n - 1
    while True:
        start = regular_subdivision(random_heights(base, rng))
        if cone_dim(secondary_cone(start)) == full:
            break

    found: dict[Subdivision, CensusEntry] = {}
    queue = deque([start])
    while queue:
        S = queue.popleft()
        if S in found:
            continue
        C = secondary_cone(S)
        d = cone_dim(C)
        found[S] = CensusEntry(S, C, d, is_effective_subdivision(S), relative_interior_point(C))
        if len(found) > budget:
            raise BudgetExceeded(f"more than {budget} cones")
        for face in facets(C):
            coarser = regular_subdivision(HeightFunction(base, face.point))
            if coarser not in found:
                queue.append(coarser)
            if d == full:
                other = _cross_facet(S, face, C.inequalities[face.inequality])
                if other is None:
                    raise AssertionError(f"could not cross facet {face.inequality} of {S}")
                if other not in found:
                    queue.append(other)

    entries = tuple(sorted(found.values(), key=lambda e: (-e.dimension, e.subdivision.cells)))
    census = FanCensus(base, entries, CompletenessCertificate(seed, 0, 0, 0))
    failures = 0
    hits = set()
    for i in range(samples):
        psi = random_heights(base, rng, coarse=bool(i % 2))
        where = census.locate(psi)
        if len(where) != 1 or where[0].subdivision != regular_subdivision(psi):
            failures += 1
        else:
            hits.add(where[0].subdivision)
    return FanCensus(base, entries, CompletenessCertificate(seed, samples, failures, len(hits)))


# -- Severi cones -------------------------------------------------------------------

@dataclass(frozen=True)
class SeveriConeCheck:
    dimension: int
    expected_dimension: int
    is_simple: bool
    is_nodal: bool
    special_point_free: bool

    @property
    def contained(self) -> bool:
        return (
            self.dimension == self.expected_dimension
            and self.is_simple
            and self.is_nodal
            and self.special_point_free
        )


def severi_cone_check(S: Subdivision, delta: int) -> SeveriConeCheck:
    if not is_effective_subdivision(S):
        raise PreconditionViolated("subdivision is not effective")
    if not 0 <= delta <= S.base.interior_point_count:
        raise PreconditionViolated(
            f"delta={delta} outside 0..{S.base.interior_point_count} (interior lattice points)"
        )
    report = classify(S)
    return SeveriConeCheck(
        dimension=cone_dim(secondary_cone(S)),
        expected_dimension=S.base.n - 1 - delta,
        is_simple=report.is_simple,
        is_nodal=report.is_nodal,
        special_point_free=not report.has_special_points,
    )


def severi_cone_test(S: Subdivision, delta: int) -> bool:
    """Whether the relative interior of C(S) is certified to lie in the
    tropical Severi variety for ``delta`` nodes."""
    return severi_cone_check(S, delta).contained


@dataclass(frozen=True)
class WitnessReport:
    effective: bool
    rank: int
    expected_dimension: int
    cone_dim_psi: int
    candidate: bool
    mechanism_holds: Optional[bool]
    tropical_membership: str = "not decided"


def subfan_obstruction_witness(psi: HeightFunction, delta: int) -> WitnessReport:
    """Check whether ``psi`` is a non-effective height of maximal rank.

    Such a ψ, if it lies on the tropical Severi variety, rules out any fan
    structure on it coming from the secondary fan. Membership in the
    tropical variety itself is not decided here.
    """
    eff = is_effective(psi)
    r = rank(psi)
    d_psi = cone_dim(secondary_cone(regular_subdivision(psi)))
    expected = psi.base.n - 1 - delta
    candidate = (not eff) and r == expected
    return WitnessReport(
        effective=eff,
        rank=r,
        expected_dimension=expected,
        cone_dim_psi=d_psi,
        candidate=candidate,
        mechanism_holds=(d_psi > r) if not eff else None,
    )

