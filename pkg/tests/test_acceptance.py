"""Acceptance criteria 1-10.

Each test is one criterion; a summary with one PASS/FAIL line per
criterion is printed at the end of the run (see ``conftest.py``). Run on
its own with ``pytest tests/test_acceptance.py`` or ``python
tests/test_acceptance.py``.
"""
import json
import os
import random
import sys
import time
from fractions import Fraction

import pytest

from conftest import FIXTURES
from oracles import coset_index, upper_faces
from tropfan import (
    HeightFunction,
    MarkedPolygon,
    NotComplementary,
    RationalSubspace,
    cone_dim,
    concave_hull_values,
    dual_curve,
    enumerate_effective_subdivisions,
    is_effective,
    principal_index,
    rank,
    refines,
    regular_subdivision,
    secondary_cone,
    severi_cone_test,
    severi_multiplicity,
    subfan_obstruction_witness,
)
from tropfan import io
from tropfan.cli import run
from tropfan.fan import Membership, membership, random_heights
from tropfan.subdivision import is_nodal, is_simple, special_points
from tropfan.tropcurve import balancing_defects, complement_regions, orthogonality_defects

CRITERIA = {
    1: "square census has 3 effective subdivisions with cone dimensions {3, 3, 2}",
    2: "random heights land in exactly one census cone (square, 2x1 rectangle)",
    3: "dual curve bijections, balancing and cc-invariance on 200 instances",
    4: "cone monotonicity along refinements in small censuses",
    5: "non-effective heights drop cone dimension; triangle dip is a witness at delta=3",
    6: "rank |A|-2 with cone dimension |A|-2 forces effectivity (delta=1)",
    7: "principal index equals brute-force coset count on 300 pairs",
    8: "full and tilde multiplicities agree; edge product identity",
    9: "Severi cone gate on the curated 10-case table",
    10: "CLI byte determinism and fixture round trips",
}


def polygon(*pts):
    return MarkedPolygon.from_points(pts)


SQUARE = polygon((0, 0), (1, 0), (1, 1), (0, 1))
RECT = polygon((0, 0), (2, 0), (2, 1), (0, 1))
TRI2 = polygon((0, 0), (2, 0), (0, 2))
KITE = polygon((0, 0), (2, 0), (1, 2))
DIAMOND = polygon((0, 0), (2, -1), (3, 0), (1, 1))
RECT3 = polygon((0, 0), (3, 0), (3, 1), (0, 1))
RECT2X2 = polygon((0, 0), (2, 0), (2, 2), (0, 2))
TRI3 = polygon((0, 0), (3, 0), (0, 3))
RECT3X2 = polygon((0, -1), (3, -1), (3, 1), (0, 1))


def _cell_marks(S):
    return frozenset(frozenset(c.marks) for c in S.cells)


# 1 -------------------------------------------------------------------------------

def test_criterion_01_square_census():
    start = time.perf_counter()
    census = enumerate_effective_subdivisions(SQUARE)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    effective = census.effective_entries
    assert len(effective) == 3
    assert sorted(e.dimension for e in effective) == [2, 3, 3]
    assert census.certificate.failures == 0

    # independent sampling oracle: upper faces of random lifts
    known = {_cell_marks(e.subdivision) for e in census.entries}
    rng = random.Random(2024)
    found = set()
    marks = SQUARE.marks
    for k in range(10**5):
        if k % 2:
            vals = [rng.randint(-10**6, 10**6) for _ in marks]
        else:
            vals = [rng.randint(-2, 2) for _ in marks]
        found.add(upper_faces(marks, vals))
    assert found == known
    print(f"census {elapsed:.3f}s, sampling oracle found {len(found)} subdivisions")


# 2 -------------------------------------------------------------------------------

def test_criterion_02_fan_completeness():
    start = time.perf_counter()
    rng = random.Random(7)
    failures = 0
    for base in (SQUARE, RECT):
        census = enumerate_effective_subdivisions(base, samples=0)
        for k in range(1000):
            psi = random_heights(base, rng, coarse=k % 4 == 0)
            hits = census.locate(psi)
            if len(hits) != 1 or hits[0].subdivision != regular_subdivision(psi):
                failures += 1
    elapsed = time.perf_counter() - start
    assert failures == 0
    assert elapsed < 30
    print(f"2000 samples, {failures} failures, {elapsed:.1f}s")


# 3 -------------------------------------------------------------------------------

def _random_polygon(rng):
    while True:
        pts = [(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(rng.randint(3, 6))]
        try:
            P = MarkedPolygon.from_points(pts)
        except ValueError:
            continue
        if P.n <= 12:
            return P


def test_criterion_03_duality_suite():
    start = time.perf_counter()
    rng = random.Random(3)
    failures = []
    for k in range(200):
        P = _random_polygon(rng)
        psi = HeightFunction(P, tuple(Fraction(rng.randint(-30, 30), rng.randint(1, 5)) for _ in P.marks))
        S = regular_subdivision(concave_hull_values(psi))
        curve = dual_curve(psi)
        ok = (
            len(curve.vertices) == len(S.cells)
            and len(curve.bounded_edges) == len(S.interior_edges)
            and len(curve.rays) == len(S.boundary_edges)
            and complement_regions(psi, steps=40) == set(S.vertices)
            and balancing_defects(curve) == []
            and orthogonality_defects(curve) == []
            and curve == dual_curve(concave_hull_values(psi))
        )
        if not ok:
            failures.append(k)
    elapsed = time.perf_counter() - start
    assert failures == []
    assert elapsed < 60
    print(f"200 instances, {len(failures)} failures, {elapsed:.1f}s")


# 4 -------------------------------------------------------------------------------

def test_criterion_04_monotonicity():
    rng = random.Random(4)
    pairs = 0
    for base in (SQUARE, RECT, TRI2, KITE, DIAMOND):
        census = enumerate_effective_subdivisions(base, samples=0)
        n = base.n
        # points of each cone: its interior point and random heights that land there
        points = {id(e): [e.interior_point] for e in census.entries}
        for k in range(300):
            psi = random_heights(base, rng, coarse=k % 2 == 0)
            for e in census.locate(psi):
                points[id(e)].append(psi.values)
        for fine in census.entries:
            for coarse in census.entries:
                if fine is coarse or not refines(fine.subdivision, coarse.subdivision):
                    continue
                pairs += 1
                assert coarse.dimension <= fine.dimension
                for p in points[id(coarse)]:
                    # affine functions are in the lineality space of every cone
                    shifted = tuple(v + 3 + 2 * a[0] - a[1] for v, a in zip(p, base.marks))
                    assert membership(fine.cone, p) is not Membership.OUTSIDE
                    assert membership(fine.cone, shifted) is not Membership.OUTSIDE
                    assert len(p) == n
    assert pairs > 100
    print(f"{pairs} refinement pairs checked")


# 5 -------------------------------------------------------------------------------

def test_criterion_05_subfan_mechanism():
    rng = random.Random(5)
    polygons = [TRI2, RECT, KITE, DIAMOND, RECT3]
    seen = 0
    k = 0
    while seen < 500:
        base = polygons[k % len(polygons)]
        psi = random_heights(base, rng, coarse=k % 3 != 0)
        k += 1
        if is_effective(psi):
            continue
        seen += 1
        low = cone_dim(secondary_cone(regular_subdivision(concave_hull_values(psi))))
        high = cone_dim(secondary_cone(regular_subdivision(psi)))
        assert low < high, psi
    dip = HeightFunction.from_mapping(
        TRI2, {(0, 0): 0, (2, 0): 0, (0, 2): 0, (1, 0): -1, (0, 1): -1, (1, 1): -1}
    )
    w = subfan_obstruction_witness(dip, 3)
    assert w.candidate and not w.effective and w.rank == 2 and w.cone_dim_psi > 2
    print(f"{seen} non-effective samples out of {k}; dip witness cone dimension {w.cone_dim_psi}")


# 6 -------------------------------------------------------------------------------

def test_criterion_06_codimension_one():
    rng = random.Random(6)
    dims = {}
    tested = 0
    for base in (SQUARE, RECT, TRI2, KITE, DIAMOND):
        top = base.n - 2
        for k in range(10**4):
            psi = random_heights(base, rng, coarse=k % 5 != 0)
            S = regular_subdivision(psi)
            if S not in dims:
                dims[S] = cone_dim(secondary_cone(S))
            if dims[S] == top and rank(psi) == top:
                tested += 1
                assert is_effective(psi), psi
    assert tested > 0
    print(f"{tested} samples with rank and cone dimension |A|-2, all effective")


# 7 -------------------------------------------------------------------------------

def _complementary_pair(rng, n):
    while True:
        k = rng.randint(1, n - 1)
        vecs = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        try:
            L1 = RationalSubspace.span(vecs[:k])
            L2 = RationalSubspace.span(vecs[k:])
            return vecs, k, principal_index(L1, L2)
        except (ValueError, NotComplementary):
            continue


def test_criterion_07_lattice_index():
    start = time.perf_counter()
    rng = random.Random(7)
    mismatches = 0
    for k in range(300):
        vecs, split, idx = _complementary_pair(rng, (2, 3, 4)[k % 3])
        if idx != coset_index(vecs[:split], vecs[split:]):
            mismatches += 1
    elapsed = time.perf_counter() - start
    assert mismatches == 0
    assert elapsed < 60
    print(f"300 pairs, {mismatches} mismatches, {elapsed:.1f}s")


# 8 -------------------------------------------------------------------------------

def test_criterion_08_formula_identity():
    checked = 0
    with_parallelograms = 0
    for base in (SQUARE, RECT, TRI2, KITE, DIAMOND, RECT3):
        census = enumerate_effective_subdivisions(base, samples=0)
        for e in census.effective_entries:
            S = e.subdivision
            if not (is_simple(S) and is_nodal(S)):
                continue
            if any(special_points(c) for c in S.cells if c.is_parallelogram):
                continue
            full = severi_multiplicity(S, "full")
            tilde = severi_multiplicity(S, "tilde")
            assert full.value == tilde.value
            assert full.edge_product_full == full.edge_product_classes * full.parallelogram_factor
            checked += 1
            with_parallelograms += any(c.is_parallelogram for c in S.cells)
    assert checked > 0 and with_parallelograms > 0
    print(f"{checked} subdivisions ({with_parallelograms} with parallelograms)")


# 9 -------------------------------------------------------------------------------

CURATED = [
    # (polygon, heights in sorted mark order, delta, expected, what is injected)
    (SQUARE, (0, 0, 0, 1), 0, True, "two-triangle square"),
    (DIAMOND, (0, 1, -5, -1, -1, -4), 0, True, "triangulated quadrilateral"),
    (RECT2X2, (0, 4, 4, 4, 5, 4, -1, 2, -1), 0, True, "triangulated 2x2 square"),
    (RECT2X2, (0, 3, 0, 3, 5, 6, 3, 5, 2), 1, True, "one unit parallelogram"),
    (DIAMOND, (0, 1, -5, -1, -1, -4), 1, False, "wrong dimension"),
    (RECT2X2, (0, 4, 0, 1, 3, 2, 0, 1, 0), 0, False, "wrong dimension"),
    (DIAMOND, (0, 1, 0, 3, 2, -1), 2, False, "non-parallelogram quadrilateral"),
    (RECT2X2, (0, 2, 1, 0, 6, 6, 0, 4, 3), 1, False, "simplicity violation"),
    (TRI3, (0, 4, 2, -2, 2, 4, 3, 4, 2, 0), 1, False, "simplicity violation"),
    (RECT3X2, (0, 5, 1, 5, 5, 5, 1, 5, 1, -4, -1, -4), 2, False, "special-point parallelogram"),
]


def test_criterion_09_severi_gate():
    correct = 0
    for base, vals, delta, expected, _ in CURATED:
        S = regular_subdivision(HeightFunction(base, vals))
        correct += severi_cone_test(S, delta) == expected
    assert correct == len(CURATED) == 10
    print(f"{correct}/{len(CURATED)} curated cases")


# 10 ------------------------------------------------------------------------------

REPORT_RUNS = [
    ["subdivide", "square_two_triangles.json"],
    ["hull", "triangle_dip.json"],
    ["classify", "rect3x2_special.json", "--delta", "2"],
    ["fan", "rectangle_2x1.json"],
    ["curve", "rectangle_2x1.json"],
    ["multiplicity", "square_two_triangles.json", "--mode", "full"],
    ["census", "rectangle_2x1.json", "--seed", "11"],
    ["witness", "triangle_dip.json", "--delta", "3"],
]


def test_criterion_10_cli_determinism(tmp_path):
    for command, name, *rest in REPORT_RUNS:
        outputs = []
        for k in range(2):
            out = tmp_path / f"{command}{k}.json"
            svg = tmp_path / f"{command}{k}.svg"
            argv = [command, "--input", os.path.join(FIXTURES, name), *rest, "--output", str(out), "--svg", str(svg)]
            assert run(argv) == 0
            outputs.append((out.read_bytes(), svg.read_bytes() if svg.exists() else b""))
        assert outputs[0] == outputs[1], command

    files = sorted(f for f in os.listdir(FIXTURES) if f.endswith(".json"))
    assert files
    for f in files:
        with open(os.path.join(FIXTURES, f), encoding="utf-8") as fh:
            text = fh.read()
        doc = json.loads(text)
        assert io.dumps(doc) == text, f
        base = io.decode_polygon(doc)
        assert io.decode_polygon(io.encode_polygon(base)) == base, f
        if "heights" in doc:
            assert io.encode_heights(io.decode_heights(base, doc["heights"])) == doc["heights"], f
        if "subdivision" in doc and all("marks" in c for c in doc["subdivision"]["cells"]):
            S = io.decode_subdivision(base, doc["subdivision"])
            assert io.encode_subdivision(S) == doc["subdivision"], f
    print(f"{len(REPORT_RUNS)} commands byte-identical; {len(files)} fixtures round-trip")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
