import pytest
from hypothesis import HealthCheck, given, settings

from dartflip.enumeration import all_kdpts
from dartflip.flip import (
    Flip, FlipPath, PathBuilder, ReplayError, apply_flip, candidate_chords, flip, flippable_edges,
    merged_face, replay,
)
from dartflip.geom import PointSet
from dartflip.ptcore import KDPT, edge

from .strategies import pointsets

A, B, C, P = 0, 1, 2, 3
HULL = [(A, B), (B, C), (A, C)]


def rotations(w):
    return {tuple(w[i:] + w[:i]) for i in range(len(w))}


def test_merged_face_slit(t4):
    T = KDPT(t4, HULL + [(P, A), (P, B)])
    w = merged_face(T, (P, A))
    assert tuple(w) in rotations((A, B, P, B, C))
    assert sorted(candidate_chords(w, T, edge(P, A))) == [edge(A, P), edge(C, P)]


def test_merged_face_convex_quad(convex5):
    fan = KDPT(convex5, sorted(convex5.hull_edges) + [(0, 2), (0, 3)])
    w = merged_face(fan, (0, 2))
    assert sorted(w) == [0, 1, 2, 3]
    assert sorted(candidate_chords(w, fan, (0, 2))) == [(0, 2), (1, 3)]


def test_merged_face_reflex_quad(t4):
    tri = KDPT(t4, HULL + [(P, A), (P, B), (P, C)])
    w = merged_face(tri, (P, B))
    assert sorted(w) == [A, B, C, P]
    assert candidate_chords(w, tri, edge(P, B)) == [edge(P, B)]
    assert flip(tri, (P, B)) is None


def test_merged_face_errors(t4):
    T = KDPT(t4, HULL + [(P, A), (P, B)])
    with pytest.raises(ValueError):
        merged_face(T, (A, B))
    with pytest.raises(ValueError):
        merged_face(T, (P, C))


def test_flip_examples(t4):
    T = KDPT(t4, HULL + [(P, A), (P, B)])
    assert flip(T, (P, A)) == KDPT(t4, HULL + [(P, B), (P, C)])
    assert flip(T, (P, B)) == KDPT(t4, HULL + [(P, A), (P, C)])


def test_flippable_counts(t4, convex5):
    assert len(flippable_edges(KDPT(t4, HULL + [(P, A), (P, B)]))) == 2
    fan = KDPT(convex5, sorted(convex5.hull_edges) + [(0, 2), (0, 3)])
    assert len(flippable_edges(fan)) == 2
    tri = PointSet([(0, 0), (1, 0), (0, 1)])
    assert flippable_edges(KDPT(tri, sorted(tri.hull_edges))) == []


def test_path_builder_and_replay(convex5):
    fan = KDPT(convex5, sorted(convex5.hull_edges) + [(0, 2), (0, 3)])
    pb = PathBuilder(fan, validate=True)
    pb.flip((0, 2))
    pb.flip((0, 3))
    path = pb.path()
    states = replay(path, fan)
    assert len(path) == 2 and states[-1].key == path.end
    back = replay(path.reversed(), states[-1])
    assert back[-1] == fan
    assert len(path.then(path.reversed())) == 4
    with pytest.raises(ValueError):
        path.then(path)


def test_replay_rejects_bad_flip(convex5):
    fan = KDPT(convex5, sorted(convex5.hull_edges) + [(0, 2), (0, 3)])
    bogus = FlipPath(fan.key, [Flip((0, 2), (2, 4))], fan.key)
    with pytest.raises(ReplayError):
        replay(bogus, fan)
    with pytest.raises(ReplayError):
        apply_flip(fan, Flip((1, 3), (0, 2)))


@settings(max_examples=20, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(pointsets(min_n=4, max_n=6))
def test_flips_preserve_k_and_are_involutions(ps):
    for k in range(min(ps.n - ps.h, 2) + 1):
        for T in all_kdpts(ps, k):
            for f in flippable_edges(T):
                T2 = apply_flip(T, f, validate=True)
                assert T2.validate(k) == []
                assert flip(T2, f.inserted) == T
