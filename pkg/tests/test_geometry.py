from hypothesis import given
from hypothesis import strategies as st
import pytest

from tropfan import DegenerateInput, MarkedPolygon, Segment, convex_hull, lattice_length, lattice_points, primitive_vector, twice_area
from tropfan.geometry import contains, on_segment

coords = st.integers(-6, 6)
points = st.tuples(coords, coords)


def test_convex_hull_examples():
    assert convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)]) == [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert convex_hull([(0, 0), (2, 0), (0, 2), (1, 0)]) == [(0, 0), (2, 0), (0, 2)]
    with pytest.raises(DegenerateInput):
        convex_hull([(0, 0), (1, 0)])
    with pytest.raises(DegenerateInput):
        convex_hull([(0, 0), (1, 1), (2, 2), (3, 3)])


def test_lattice_points_examples():
    assert len(lattice_points([(0, 0), (1, 0), (1, 1), (0, 1)])) == 4
    assert len(lattice_points([(0, 0), (2, 0), (0, 2)])) == 6
    assert lattice_points([(0, 0), (1, 0), (0, 1)]) == [(0, 0), (0, 1), (1, 0)]


def test_twice_area_examples():
    assert twice_area((0, 0), (1, 0), (0, 1)) == 1
    assert twice_area((0, 0), (2, 0), (0, 2)) == 4
    assert twice_area((0, 0), (1, 0), (2, 0)) == 0


def test_lattice_length_and_primitive_vector():
    assert lattice_length(Segment((0, 0), (1, 1))) == 1
    assert lattice_length(Segment((0, 0), (2, 4))) == 2
    assert lattice_length(Segment((0, 0), (3, 0))) == 3
    assert primitive_vector(Segment((0, 0), (2, 4))) == (1, 2)
    assert primitive_vector(Segment((0, 0), (0, 3))) == (0, 1)
    assert primitive_vector(Segment((1, 1), (0, 0))) == (-1, -1)
    with pytest.raises(ValueError):
        lattice_length(Segment((1, 2), (1, 2)))


def test_marked_polygon_validation():
    P = MarkedPolygon.from_points([(0, 0), (2, 0), (0, 2)])
    assert P.n == 6 and P.interior_point_count == 0 and P.twice_area == 4
    with pytest.raises(DegenerateInput):
        # vertex (2, 0) not marked
        MarkedPolygon.from_points([(0, 0), (2, 0), (0, 2)], marks=[(0, 0), (1, 0), (0, 2)])
    with pytest.raises(DegenerateInput):
        MarkedPolygon.from_points([(0, 0), (1, 1), (2, 2)])


unimodular = st.sampled_from([
    ((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 1), (0, 1)), ((1, 0), (3, 1)),
    ((2, 1), (1, 1)), ((-1, 0), (0, 1)), ((1, -2), (0, -1)), ((5, 3), (3, 2)),
])


def _apply(m, shift, p):
    (a, b), (c, d) = m
    return (a * p[0] + b * p[1] + shift[0], c * p[0] + d * p[1] + shift[1])


@given(points, points, points, unimodular, points)
def test_twice_area_unimodular_invariance(a, b, c, m, shift):
    moved = [_apply(m, shift, p) for p in (a, b, c)]
    assert twice_area(*moved) == twice_area(a, b, c)


@given(points, points)
def test_lattice_length_counts_points(a, b):
    if a == b:
        return
    xs = range(min(a[0], b[0]), max(a[0], b[0]) + 1)
    ys = range(min(a[1], b[1]), max(a[1], b[1]) + 1)
    on = sum(1 for x in xs for y in ys if on_segment(a, b, (x, y)))
    assert lattice_length(Segment(a, b)) == on - 1


@given(st.lists(points, min_size=3, max_size=12), st.randoms(use_true_random=False))
def test_convex_hull_idempotent_and_order_insensitive(pts, rnd):
    try:
        hull = convex_hull(pts)
    except DegenerateInput:
        return
    assert convex_hull(hull) == hull
    shuffled = list(pts)
    rnd.shuffle(shuffled)
    assert convex_hull(shuffled) == hull
    assert all(contains(hull, p) for p in pts)
