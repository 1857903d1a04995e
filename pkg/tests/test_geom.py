import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dartflip.geom import (
    COORD_BOUND, Containment, GeometryError, Orientation, PointSet, convex_hull, convex_pointset,
    in_triangle, orient, random_pointset, segment_contains_point, segments_properly_intersect,
    twice_area,
)

A, B, C, p = (0, 0), (4, 0), (2, 4), (2, 1)

coord = st.integers(-1000, 1000)
point = st.tuples(coord, coord)


def test_orient_basic():
    assert orient(A, B, C) == Orientation.CCW
    assert orient(A, C, B) == Orientation.CW
    assert orient((0, 0), (1, 1), (2, 2)) == Orientation.COLLINEAR


def test_orient_is_exact_near_bound():
    big = COORD_BOUND
    # a float determinant loses the 1 here
    assert orient((-big, -big), (big, big - 1), (big - 1, big - 2)) != Orientation.COLLINEAR


def test_in_triangle_examples():
    assert in_triangle(p, A, B, C) == Containment.STRICTLY_INSIDE
    assert in_triangle((100, 100), A, B, C) == Containment.OUTSIDE
    assert in_triangle((2, 0), A, B, C) == Containment.ON_BOUNDARY


def test_segment_examples():
    assert segments_properly_intersect(((0, 0), (4, 4)), ((0, 4), (4, 0)))
    assert not segments_properly_intersect(((0, 0), (1, 1)), ((2, 2), (3, 3)))
    assert not segments_properly_intersect(((0, 0), (4, 0)), ((4, 0), (5, 5)))
    assert segment_contains_point(((0, 0), (4, 0)), (2, 0))
    assert not segment_contains_point(((0, 0), (4, 0)), (4, 0))


def test_hull_and_interior(t4, convex5):
    assert t4.h == 3 and t4.interior == (3,)
    assert convex5.h == 5 and convex5.interior == ()
    assert twice_area([A, B, C]) == 16


@pytest.mark.parametrize("pts, msg", [
    ([(0, 0), (1, 1), (2, 2), (0, 5)], "collinear"),
    ([(0, 0), (0, 0), (1, 3)], "duplicate"),
    ([(0, 0), (1.5, 0), (1, 3)], "non-integer"),
    ([(0, 0), (COORD_BOUND + 1, 0), (1, 3)], "exceeds bound"),
    ([(0, 0), (1, 0)], "at least 3"),
])
def test_pointset_rejects(pts, msg):
    with pytest.raises(GeometryError, match=msg):
        PointSet(pts)


def test_generators_deterministic():
    a = random_pointset(8, random.Random(5), span=40)
    b = random_pointset(8, random.Random(5), span=40)
    assert a == b and a.n == 8
    assert convex_pointset(6).h == 6


@given(point, point, point)
def test_orient_antisymmetric_and_cyclic(a, b, c):
    assert orient(a, b, c) == -orient(b, a, c)
    assert orient(a, b, c) == orient(b, c, a)


@given(point, point, point, point)
def test_in_triangle_permutation_invariant(q, a, b, c):
    if orient(a, b, c) == Orientation.COLLINEAR:
        return
    r = in_triangle(q, a, b, c)
    assert r == in_triangle(q, b, a, c) == in_triangle(q, c, b, a) == in_triangle(q, b, c, a)


@settings(max_examples=60)
@given(st.lists(point, min_size=3, max_size=12, unique=True))
def test_hull_is_ccw_and_encloses(pts):
    try:
        hull = convex_hull(pts)
    except GeometryError:
        assert all(orient(pts[0], pts[1], q) == Orientation.COLLINEAR for q in pts)
        return
    H = [pts[i] for i in hull]
    for i in range(len(H)):
        a, b = H[i], H[(i + 1) % len(H)]
        assert all(orient(a, b, q) != Orientation.CW for q in pts)
