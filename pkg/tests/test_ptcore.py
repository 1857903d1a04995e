import pytest
from hypothesis import HealthCheck, given, settings

from dartflip.enumeration import all_kdpts
from dartflip.geom import PointSet
from dartflip.ptcore import (
    KDPT, FaceKind, InvalidKDPT, add_spines, canonical_key, classify_face, edge, faces,
    key_to_edges, pointed_vertices, remove_spines, validate_kdpt,
)

from .strategies import pointsets

A, B, C, P = 0, 1, 2, 3
HULL = [(A, B), (B, C), (A, C)]


def t4_dart(t4, spokes=((P, A), (P, B))):
    return KDPT(t4, HULL + list(spokes))


def test_faces_triangulation(t4):
    T = KDPT(t4, HULL + [(P, A), (P, B), (P, C)])
    walks = faces(T)
    assert len(walks) == 3 and all(len(w) == 3 for w in walks)


def test_faces_with_dart(t4):
    walks = {frozenset(w): w for w in faces(t4_dart(t4))}
    assert set(walks) == {frozenset({A, P, B}), frozenset({A, C, B, P})}


def test_faces_convex_fan(convex5):
    T = KDPT(convex5, sorted(convex5.hull_edges) + [(0, 2), (0, 3)])
    assert len(faces(T)) == 3


def test_faces_rejects_crossing(convex5):
    with pytest.raises(InvalidKDPT):
        faces(KDPT(convex5, sorted(convex5.hull_edges) + [(0, 2), (1, 3)]))


def test_classify_face():
    ps = PointSet([(-1, 0), (0, 1), (1, 0), (0, 3)])
    f = classify_face((0, 1, 2, 3), ps)
    assert f.kind is FaceKind.DART
    assert (f.dart.tail, f.dart.tip, f.dart.wings) == (1, 3, (0, 2))


def test_classify_face_t4(t4):
    walk = next(w for w in faces(t4_dart(t4)) if len(w) == 4)
    f = classify_face(walk, t4)
    assert f.kind is FaceKind.DART
    assert (f.dart.tail, f.dart.tip, f.dart.wings) == (P, C, (A, B))
    tri = next(w for w in faces(t4_dart(t4)) if len(w) == 3)
    assert classify_face(tri, t4).kind is FaceKind.TRIANGLE


def test_classify_face_rejects_repeats(t4):
    with pytest.raises(ValueError):
        classify_face((A, B, P, B), t4)


def test_validate_examples(t4, convex5):
    assert validate_kdpt(t4, HULL + [(P, A), (P, B)], 1) == []
    assert "dart count 0 ≠ 1" in validate_kdpt(t4, HULL + [(P, A), (P, B), (P, C)], 1)
    fan = sorted(convex5.hull_edges) + [(0, 2), (0, 3)]
    assert validate_kdpt(convex5, fan, 0) == []


def test_validate_missing_hull_edge(t4):
    assert validate_kdpt(t4, [(A, B), (B, C), (P, A), (P, B), (P, C)], 0)


def test_pointed_vertices(t4, convex5, dc11):
    assert pointed_vertices(t4_dart(t4)) == {P}
    assert pointed_vertices(KDPT(convex5, sorted(convex5.hull_edges) + [(0, 2), (0, 3)])) == set()
    for T in all_kdpts(dc11.ps, 2):
        assert pointed_vertices(T) == set(T.tails) and len(T.tails) == 2


def test_canonical_key(t4):
    a = t4_dart(t4)
    b = KDPT(t4, list(reversed(sorted(a.edges))))
    assert canonical_key(a) == canonical_key(b)
    assert canonical_key(a) != canonical_key(t4_dart(t4, ((P, B), (P, C))))
    assert key_to_edges(canonical_key(a), t4.n) == sorted(a.edges)


def test_add_remove_spines(t4):
    tri, S = add_spines(t4_dart(t4))
    assert tri.edges == frozenset(HULL + [(A, P), (B, P), (C, P)])
    assert S == {edge(P, C)}
    assert remove_spines(tri, S) == t4_dart(t4)
    assert add_spines(tri) == (tri, frozenset())


def test_remove_spines_errors(t4):
    tri = KDPT(t4, HULL + [(P, A), (P, B), (P, C)])
    with pytest.raises(ValueError, match="hull edge"):
        remove_spines(tri, [(A, B)])
    with pytest.raises(ValueError, match="share face"):
        remove_spines(tri, [(P, A), (P, B)])


def test_canonical_dc11_spines_triangulate(dc11):
    from dartflip.doublechain import Designation, canonical_kdpt
    tri, _ = add_spines(canonical_kdpt(dc11, Designation(1, 1)))
    assert tri.validate(0) == []


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(pointsets(min_n=4, max_n=6))
def test_every_kdpt_validates_and_round_trips(ps):
    for k in range(ps.n - ps.h + 1):
        for T in all_kdpts(ps, k):
            assert T.validate(k) == []
            assert len(T.edges) == 3 * ps.n - ps.h - 3 - k
            tri, S = add_spines(T)
            assert len(S) == k and tri.validate(0) == []
            assert remove_spines(tri, S) == T
