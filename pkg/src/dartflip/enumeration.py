"""Brute-force enumeration of triangulations and k-DPTs of small point sets."""

from __future__ import annotations

import itertools
import os
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from .flip import flippable_edges
from .geom import PointSet
from .ptcore import KDPT, add_spines, edge, remove_spines

DEFAULT_CAP = 10


class CapExceeded(ValueError):
    pass


def size_cap() -> int:
    return int(os.environ.get("DARTFLIP_CAP", DEFAULT_CAP))


def _check_cap(ps: PointSet, cap: Optional[int]) -> None:
    cap = size_cap() if cap is None else cap
    if ps.n > cap:
        raise CapExceeded(f"n = {ps.n} exceeds enumeration cap {cap} (set DARTFLIP_CAP to override)")


@dataclass
class EnumerationResult:
    items: list[bytes]
    kdpts: dict[bytes, KDPT] = field(repr=False)
    by_tail: Counter = field(default_factory=Counter)
    by_label: Counter = field(default_factory=Counter)

    @property
    def count(self) -> int:
        return len(self.items)

    def __iter__(self):
        return (self.kdpts[k] for k in self.items)


def initial_triangulation(ps: PointSet) -> KDPT:
    """Greedy maximal plane graph over index-ordered segments; always a triangulation."""
    edges: list[tuple[int, int]] = []
    for i, j in itertools.combinations(range(ps.n), 2):
        if not any(ps.crosses(i, j, a, b) for a, b in edges):
            edges.append((i, j))
    return KDPT(ps, edges)


def complete_triangulation(ps: PointSet, forced, forbidden=()) -> KDPT:
    """Extend ``forced`` (plus hull edges) greedily by segments in lexicographic order of endpoint coordinates.

    Segments in ``forbidden`` are skipped, which is how dart spines are kept out.
    """
    P = ps.points
    edges = sorted({edge(*e) for e in forced} | ps.hull_edges)
    have = set(edges)
    forbidden = {edge(*e) for e in forbidden}

    def order(e):
        i, j = e
        return (min(P[i], P[j]), max(P[i], P[j]))

    for e in sorted(itertools.combinations(range(ps.n), 2), key=order):
        if e in have or e in forbidden:
            continue
        if not any(ps.crosses(*e, *f) for f in edges):
            edges.append(e)
            have.add(e)
    return KDPT(ps, edges)


def all_triangulations(ps: PointSet, cap: Optional[int] = None) -> EnumerationResult:
    _check_cap(ps, cap)
    start = initial_triangulation(ps)
    seen = {start.key: start}
    queue = deque([start])
    while queue:
        T = queue.popleft()
        for f in flippable_edges(T):
            nxt = T.replace(f.removed, f.inserted)
            if nxt.key not in seen:
                seen[nxt.key] = nxt
                queue.append(nxt)
    items = sorted(seen)
    return EnumerationResult(items, seen, Counter({(): len(items)}))


def spine_candidates(Ttri: KDPT) -> list[tuple[int, int]]:
    """Interior edges whose two triangles form a non-convex quadrilateral."""
    out = []
    walks, face_of = Ttri.face_walks, Ttri.face_of
    for e in Ttri.interior_edges():
        i, j = e
        a = next(v for v in walks[face_of[(i, j)]] if v not in e)
        b = next(v for v in walks[face_of[(j, i)]] if v not in e)
        if not Ttri.ps.crosses(i, j, a, b):
            out.append(e)
    return out


def all_kdpts(ps: PointSet, k: int, cap: Optional[int] = None,
              labeler: Optional[Callable[[KDPT], object]] = None,
              triangulations: Optional[EnumerationResult] = None) -> EnumerationResult:
    """Every k-DPT exactly once, as (triangulation, spine set) pairs under the spine bijection."""
    _check_cap(ps, cap)
    if not 0 <= k <= ps.n - ps.h:
        raise ValueError(f"k = {k} outside 0..{ps.n - ps.h}")
    tris = triangulations if triangulations is not None else all_triangulations(ps, cap)
    if k == 0:
        found = dict(tris.kdpts)
    else:
        found = {}
        for T in tris:
            cands = spine_candidates(T)
            face_of = T.face_of
            for S in itertools.combinations(cands, k):
                fs = [face_of[(i, j)] for i, j in S] + [face_of[(j, i)] for i, j in S]
                if len(set(fs)) != 2 * k:
                    continue
                D = remove_spines(T, S)
                if D.key in found:
                    raise AssertionError(f"duplicate k-DPT {sorted(D.edges)}")
                found[D.key] = D
    items = sorted(found)
    by_tail = Counter(found[key].tails for key in items)
    by_label = Counter(labeler(found[key]) for key in items) if labeler else Counter()
    return EnumerationResult(items, found, by_tail, by_label)


def spine_pair_count(ps: PointSet, cap: Optional[int] = None) -> int:
    """Number of (triangulation, admissible spine set) pairs over all sizes."""
    total = 0
    for T in all_triangulations(ps, cap):
        cands = spine_candidates(T)
        face_of = T.face_of
        for r in range(len(cands) + 1):
            for S in itertools.combinations(cands, r):
                fs = [face_of[(i, j)] for i, j in S] + [face_of[(j, i)] for i, j in S]
                if len(set(fs)) == 2 * r:
                    total += 1
    return total


def check_bijection(D: KDPT, source: KDPT, spines) -> bool:
    tri, S = add_spines(D)
    return tri == source and S == frozenset(spines)
