"""Flip sequences and component prediction for 1-DPTs."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .enumeration import all_kdpts, complete_triangulation
from .flip import FlipPath, PathBuilder, ReplayError, flip_target, flippable_edges
from .geom import PointSet, convex_hull
from .ptcore import KDPT, DartInfo, FaceKind, _classify, add_spines, edge


class PathError(RuntimeError):
    pass


def constrained_flip_path(T_from: KDPT, T_to: KDPT, C=(), validate: bool = False) -> FlipPath:
    """Triangulation flip path that never touches the edges in C.

    Flips that create a target edge directly are taken first; otherwise the
    smallest missing edge of ``T_to`` is inserted by flipping the edges that
    cross it. Target edges, once present, are never flipped again, so the
    path ends exactly at ``T_to``.
    """
    ps = T_from.ps
    C = {edge(*e) for e in C}
    for e in sorted(C):
        if e not in T_from.edges or e not in T_to.edges:
            raise PathError(f"constraint {e} is not in both triangulations")
    for e, f in ((e, f) for e in C for f in C if e < f):
        if ps.crosses(*e, *f):
            raise PathError(f"constraints {e} and {f} cross")
    pb = PathBuilder(T_from, validate=validate)
    fixed = set(C)
    budget = 4 * len(T_from.edges) ** 2 + 16
    while True:
        # first take any flip that lands directly on a target edge
        progress = True
        while progress:
            progress = False
            for f in sorted(pb.cur.edges - T_to.edges):
                c = flip_target(pb.cur, f)
                if c is not None and c in T_to.edges:
                    pb.flip(f)
                    fixed.add(c)
                    progress = True
                    break
        missing = sorted(T_to.edges - pb.cur.edges)
        if not missing:
            break
        e = missing[0]
        while e not in pb.cur.edges:
            budget -= 1
            if budget < 0:
                raise PathError(f"edge insertion of {e} did not terminate")
            crossing = sorted(f for f in pb.cur.edges if ps.crosses(*e, *f))
            if any(f in fixed for f in crossing):
                raise PathError(f"target edge {e} crosses a frozen edge")
            best = None
            for f in crossing:
                c = flip_target(pb.cur, f)
                if c is None:
                    continue
                if not ps.crosses(*e, *c):
                    best = f
                    break
                if best is None:
                    best = f
            if best is None:
                raise PathError(f"no flippable edge crosses {e}")
            pb.flip(best)
        fixed.add(e)
    if pb.cur != T_to:
        raise PathError("constrained path did not reach the target")
    return pb.path()


def transfer(path: FlipPath, T: KDPT, validate: bool = False) -> FlipPath:
    """Replay a triangulation path's flips on a k-DPT that shares the touched faces."""
    pb = PathBuilder(T, validate=validate)
    for f in path.flips:
        try:
            pb.push(f)
        except ReplayError as exc:
            raise PathError(f"flip {f} does not transfer: {exc}") from exc
    return pb.path()


# ---------------------------------------------------------------------------
# tail swaps on quintuples and the predicted component partition


def _face_contains(ps: PointSet, walk, q: int) -> bool:
    f = _classify(walk, ps)
    if f.kind is FaceKind.TRIANGLE:
        return ps.in_triangle_idx(q, *walk)
    if f.kind is FaceKind.DART:
        d = f.dart
        return ps.in_triangle_idx(q, d.tip, *d.wings) and not ps.in_triangle_idx(q, d.tail, *d.wings)
    raise ValueError(f"cannot test containment in {walk}")


@functools.lru_cache(maxsize=4096)
def _quintuple_swaps(pts: tuple) -> tuple:
    """Tail-swapping flips in the 1-DPT flip graph of five points.

    Returns (tail_before, tail_after, faces merged by the flip) per directed
    swap, in local indices.
    """
    sub = PointSet(pts)
    if sub.h != 3:
        return ()
    out = []
    for T in all_kdpts(sub, 1, cap=5):
        for f in flippable_edges(T):
            T2 = T.replace(f.removed, f.inserted)
            if T2.tails != T.tails:
                i, j = f.removed
                walks = (T.face_walks[T.face_of[(i, j)]], T.face_walks[T.face_of[(j, i)]])
                out.append((T.tails[0], T2.tails[0], walks, (T.darts[0], T2.darts[0])))
    return tuple(out)


def quintuple_swap_edges(ps: PointSet, five) -> int:
    """Undirected tail-swapping edges in the 1-DPT flip graph of the five points."""
    return len(_quintuple_swaps(tuple(ps.points[v] for v in five))) // 2


def quintuple_swap_count(ps: PointSet, five) -> int:
    """Distinct tail swaps, a swap being the unordered pair of darts before and after.

    One of the swaps is realised by two graph edges (the face not touched by
    the flip can be split two ways), so this is one less than
    ``quintuple_swap_edges``.
    """
    swaps = _quintuple_swaps(tuple(ps.points[v] for v in five))
    return len({frozenset(pair) for *_, pair in swaps})


def quintuple_swap_test(ps: PointSet, p: int, q: int, s: int, t: int, u: int) -> bool:
    """Can a dart move its tail between p and q by one flip inside the quintuple?

    The five points must have hull {s, t, u} with p and q inside, and some
    tail-swapping flip between p and q in the 5-point 1-DPT flip graph must
    merge two faces that contain no further point of ``ps``.
    """
    five = (p, q, s, t, u)
    if len(set(five)) != 5 or not all(0 <= v < ps.n for v in five):
        raise ValueError(f"indices {five} must be distinct and in range")
    if not (ps.in_triangle_idx(p, s, t, u) and ps.in_triangle_idx(q, s, t, u)):
        return False
    others = [v for v in ps.points_in_triangle(s, t, u) if v not in (p, q)]
    sub = PointSet([ps.points[v] for v in five])
    for before, after, walks, _ in _quintuple_swaps(sub.points):
        if {before, after} != {0, 1}:
            continue
        glob = [tuple(five[v] for v in w) for w in walks]
        if not any(_face_contains(ps, w, x) for w in glob for x in others):
            return True
    return False


@dataclass
class TailGraph:
    nodes: list[int]
    edges: list[tuple[int, int]]
    witnesses: dict[tuple[int, int], tuple[int, int, int]]


def tail_graph(ps: PointSet) -> TailGraph:
    nodes = list(ps.interior)
    edges = []
    witnesses = {}
    for p, q in itertools.combinations(nodes, 2):
        rest = [v for v in range(ps.n) if v not in (p, q)]
        for s, t, u in itertools.combinations(rest, 3):
            if quintuple_swap_test(ps, p, q, s, t, u):
                edges.append((p, q))
                witnesses[(p, q)] = (s, t, u)
                break
    return TailGraph(nodes, edges, witnesses)


def predicted_components_1dpt(ps: PointSet) -> list[frozenset]:
    """Partition of the interior points; one flip-graph component of 1-DPTs per part."""
    if not ps.interior:
        raise ValueError("point set has no interior points, hence no 1-DPTs")
    tg = tail_graph(ps)
    parent = {v: v for v in tg.nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for p, q in tg.edges:
        parent[find(p)] = find(q)
    parts: dict[int, set] = {}
    for v in tg.nodes:
        parts.setdefault(find(v), set()).add(v)
    return sorted((frozenset(s) for s in parts.values()), key=min)


# ---------------------------------------------------------------------------
# constructive flip sequences


def single_dart(T: KDPT) -> DartInfo:
    if T.k != 1:
        raise ValueError(f"expected a 1-DPT, got k = {T.k}")
    return T.darts[0]


def in_dart_triangle(T: KDPT) -> bool:
    """The dart's corners span a triangle holding only the tail, and the wings are joined."""
    d = single_dart(T)
    return edge(*d.wings) in T.edges and T.ps.points_in_triangle(d.tip, *d.wings) == [d.tail]


def _dart_edges(d: DartInfo) -> set:
    w1, w2 = d.wings
    return {edge(d.tip, w1), edge(d.tip, w2), edge(d.tail, w1), edge(d.tail, w2), d.spine}


def _retriangulate_around(pb: PathBuilder, d: DartInfo, extra) -> None:
    """Constrained flips (dart edges and spine held) towards a triangulation containing ``extra``."""
    ps = pb.cur.ps
    D = _dart_edges(d)
    tri, _ = add_spines(pb.cur)
    target = complete_triangulation(ps, D | set(extra), ())
    pb.extend(transfer(constrained_flip_path(tri, target, D), pb.cur))


def _visible_chain(ps: PointSet, w1: int, w2: int, inner) -> list[int]:
    """Hull vertices of {w1, w2} + inner on the path from w1 to w2 that avoids edge w1w2."""
    pts = [w1, w2] + sorted(inner)
    hull = [pts[i] for i in convex_hull([ps.points[v] for v in pts])]
    s = hull.index(w1)
    cyc = hull[s:] + hull[:s]
    if cyc[1] == w2:
        return [w1] + cyc[:0:-1]
    return cyc


def dart_triangle_path(T: KDPT, validate: bool = False) -> FlipPath:
    """Flips taking a 1-DPT to one whose dart sits in a dart triangle with the same tip and tail."""
    d = single_dart(T)
    ps = T.ps
    tip, tail = d.tip, d.tail
    pb = PathBuilder(T, validate=validate)
    if in_dart_triangle(T):
        return pb.path()
    w1, w2 = d.wings
    if edge(w1, w2) not in T.edges:
        _retriangulate_around(pb, d, [edge(w1, w2)])
    while True:
        d = single_dart(pb.cur)
        if (d.tip, d.tail) != (tip, tail):
            raise PathError(f"dart changed from tip/tail {(tip, tail)} to {(d.tip, d.tail)}")
        w1, w2 = d.wings
        inner = ps.points_in_triangle(w1, w2, tail)
        if not inner:
            break
        chain = _visible_chain(ps, w1, w2, inner)
        fan = [edge(tail, v) for v in chain] + [edge(x, y) for x, y in zip(chain, chain[1:])]
        _retriangulate_around(pb, d, fan + [edge(w1, w2)])
        side = ps.orient_idx(tip, tail, chain[0])
        split = next(i for i, v in enumerate(chain) if ps.orient_idx(tip, tail, v) != side)
        # walk each wing along the chain towards the spine extension
        for targets in (chain[1:split], chain[split:-1][::-1]):
            for nxt in targets:
                dd = single_dart(pb.cur)
                wing = next(w for w in dd.wings if ps.orient_idx(tip, tail, w) == ps.orient_idx(tip, tail, nxt))
                pb.flip(edge(tail, wing))
                nd = single_dart(pb.cur)
                if (nd.tip, nd.tail) != (tip, tail) or nxt not in nd.wings:
                    raise PathError(f"wing move to {nxt} failed, dart now {nd}")
    if not in_dart_triangle(pb.cur):
        raise PathError("final dart is not in a dart triangle")
    return pb.path()


def _rotate_tip(pb: PathBuilder, want_tip: int) -> None:
    """Make ``want_tip`` the dart's tip; it must be a wing of a dart in its dart triangle."""
    d = single_dart(pb.cur)
    if d.tip == want_tip:
        return
    if want_tip not in d.wings:
        raise PathError(f"{want_tip} is not a corner of the dart triangle {d.corners}")
    pb.flip(edge(d.tail, want_tip))
    nd = single_dart(pb.cur)
    if nd.tip != want_tip or nd.tail != d.tail:
        raise PathError(f"rotation towards tip {want_tip} produced {nd}")


def special_face_flip(T: KDPT, quad, diag, validate: bool = False) -> FlipPath:
    """Flip the diagonal ``diag`` = su of quadrilateral (s, t, u, v) when one of its
    triangles holds the dart (in its dart triangle); ends with tv present and the
    dart in a dart triangle inside the new face."""
    s, t, u, v = quad
    if edge(*diag) != edge(s, u):
        raise ValueError(f"diagonal {diag} is not su of {quad}")
    d = single_dart(T)
    pb = PathBuilder(T, validate=validate)
    if edge(t, v) in T.edges:
        return pb.path()
    if not in_dart_triangle(T):
        raise PathError("dart is not in a dart triangle")
    corners = {d.tip, *d.wings}
    if corners == {s, u, v}:
        s, t, u, v = u, v, s, t  # relabel so that t is the corner of the dart triangle
    if corners != {s, u, t}:
        raise PathError(f"dart triangle {sorted(corners)} is not a face of {quad} on {edge(s, u)}")
    p = d.tail
    _rotate_tip(pb, t)
    pb.flip(edge(s, u))
    # tv crosses exactly one of the tail's edges; that one flips to tv
    x = s if T.ps.crosses(t, v, p, s) else u
    pb.flip(edge(p, x))
    if edge(t, v) not in pb.cur.edges or not in_dart_triangle(pb.cur):
        raise PathError(f"gadget on {quad} did not reach the flipped quadrilateral")
    return pb.path()


def _reduced_face(T: KDPT) -> tuple[int, int, int]:
    d = single_dart(T)
    return (d.tip, *d.wings)


def same_tail_path(T1: KDPT, T2: KDPT, validate: bool = False) -> FlipPath:
    """Flip path between two 1-DPTs whose darts share a tail.

    Both ends are first moved to dart triangles; the tail is then deleted, the
    two triangulations of the remaining points are joined by triangulation
    flips, and the flips are replayed with the dart carried along through the
    face that contains the tail.
    """
    d1, d2 = single_dart(T1), single_dart(T2)
    if d1.tail != d2.tail:
        raise ValueError(f"tails differ: {d1.tail} vs {d2.tail}")
    if T1 == T2:
        return FlipPath(T1.key, [], T2.key)
    try:
        return _same_tail_constructive(T1, T2, validate)
    except (PathError, ReplayError) as exc:
        from .flipgraph import build  # deferred: only needed on the fallback path
        fg = build(T1.ps, 1)
        route = fg.shortest_path(fg.index(T1.key), fg.index(T2.key))
        if route is None:
            raise PathError("no path between same-tail 1-DPTs") from exc
        pb = PathBuilder(T1, validate=validate)
        for j in route[1:]:
            target = fg.kdpts[j]
            removed = next(iter(pb.cur.edges - target.edges))
            pb.flip(removed)
        pb.notes.append(f"fallback to flip-graph search: {exc}")
        return pb.path(fallback=True)


def _same_tail_constructive(T1: KDPT, T2: KDPT, validate: bool) -> FlipPath:
    ps = T1.ps
    S1 = dart_triangle_path(T1, validate)
    S2 = dart_triangle_path(T2, validate)
    A1 = KDPT(ps, _replayed_edges(T1, S1))
    A2 = KDPT(ps, _replayed_edges(T2, S2))
    p = single_dart(A1).tail
    sub, keep = ps.without(p)
    local = {old: new for new, old in enumerate(keep)}

    def reduce(A):
        return KDPT(sub, [(local[i], local[j]) for i, j in A.edges if p not in (i, j)])

    R = constrained_flip_path(reduce(A1), reduce(A2), sub.hull_edges)
    pb = PathBuilder(T1, validate=validate)
    pb.extend(S1)
    for f in R.flips:
        e = edge(keep[f.removed[0]], keep[f.removed[1]])
        c = edge(keep[f.inserted[0]], keep[f.inserted[1]])
        face = set(_reduced_face(pb.cur))
        if set(e) <= face:
            t = next(iter(face - set(e)))
            v = next(iter(set(c) - {t}))
            s, u = e
            pb.extend(special_face_flip(pb.cur, (s, t, u, v), e, validate))
        else:
            pb.flip(e)
        if pb.cur.tails != (p,):
            raise PathError(f"tail left {p} while replaying {f}")
    _rotate_tip(pb, single_dart(A2).tip)
    if pb.cur != A2:
        raise PathError("replay did not reach the second dart-triangle state")
    pb.extend(S2.reversed())
    return pb.path()


def _replayed_edges(T: KDPT, path: FlipPath):
    edges = set(T.edges)
    for f in path.flips:
        edges.remove(f.removed)
        edges.add(f.inserted)
    return edges
