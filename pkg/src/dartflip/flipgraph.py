"""Explicit flip graphs over all k-DPTs of a point set."""

from __future__ import annotations

import functools
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Callable, Optional

from .enumeration import EnumerationResult, all_kdpts
from .flip import Flip, FlipInvariantError, flippable_edges
from .geom import PointSet
from .ptcore import KDPT


class UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))
        self.rank = [0] * size
        self.count = size

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        self.count -= 1
        return True


@dataclass
class FlipGraph:
    ps: PointSet
    k: int
    nodes: list[bytes]
    kdpts: list[KDPT] = field(repr=False)
    adjacency: list[list[int]] = field(repr=False)
    components: list[int] = field(repr=False)
    flips: Optional[list[list[Flip]]] = field(default=None, repr=False)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    @property
    def component_count(self) -> int:
        return max(self.components) + 1 if self.components else 0

    @property
    def component_sizes(self) -> list[int]:
        c = Counter(self.components)
        return [c[i] for i in range(self.component_count)]

    def edges(self):
        for u, nb in enumerate(self.adjacency):
            for v in nb:
                if u < v:
                    yield (u, v)

    def index(self, key: bytes) -> int:
        return self._index[key]

    @functools.cached_property
    def _index(self) -> dict[bytes, int]:
        return {k: i for i, k in enumerate(self.nodes)}

    def shortest_path(self, src: int, dst: int) -> Optional[list[int]]:
        prev = {src: None}
        q = deque([src])
        while q:
            u = q.popleft()
            if u == dst:
                break
            for v in self.adjacency[u]:
                if v not in prev:
                    prev[v] = u
                    q.append(v)
        if dst not in prev:
            return None
        out = [dst]
        while prev[out[-1]] is not None:
            out.append(prev[out[-1]])
        return out[::-1]


def build(ps: PointSet, k: int, cap: Optional[int] = None,
          enumeration: Optional[EnumerationResult] = None, keep_flips: bool = False) -> FlipGraph:
    enum = enumeration if enumeration is not None else all_kdpts(ps, k, cap)
    nodes = list(enum.items)
    index = {key: i for i, key in enumerate(nodes)}
    kdpts = [enum.kdpts[key] for key in nodes]
    adj: list[set[int]] = [set() for _ in nodes]
    uf = UnionFind(len(nodes))
    kept = [] if keep_flips else None
    for i, T in enumerate(kdpts):
        fl = flippable_edges(T)
        if kept is not None:
            kept.append(fl)
        for f in fl:
            nkey = T.replace(f.removed, f.inserted).key
            j = index.get(nkey)
            if j is None:
                raise FlipInvariantError(f"flip {f} leaves the enumerated k-DPTs")
            if j == i:
                raise FlipInvariantError(f"flip {f} is a self-loop")
            adj[i].add(j)
            adj[j].add(i)
            uf.union(i, j)
    # component ids in order of first (smallest-key) member
    label: dict[int, int] = {}
    comps = []
    for i in range(len(nodes)):
        r = uf.find(i)
        if r not in label:
            label[r] = len(label)
        comps.append(label[r])
    return FlipGraph(ps, k, nodes, kdpts, [sorted(a) for a in adj], comps, kept)


def components_by(fg: FlipGraph, labeler: Callable[[KDPT], object]) -> list[Counter]:
    """Multiset of labels per component."""
    out = [Counter() for _ in range(fg.component_count)]
    for T, c in zip(fg.kdpts, fg.components):
        out[c][labeler(T)] += 1
    return out


def stats(fg: FlipGraph) -> dict:
    return {
        "n": fg.ps.n,
        "h": fg.ps.h,
        "k": fg.k,
        "nodes": len(fg.nodes),
        "edges": fg.edge_count,
        "components": fg.component_count,
        "component_sizes": fg.component_sizes,
    }


def involution_failures(fg: FlipGraph) -> list[str]:
    """Every recorded flip T -> T' must be undone by flipping the new edge of T'."""
    if fg.flips is None:
        raise ValueError("graph was built without keep_flips")
    out = []
    sets = [set(fl) for fl in fg.flips]
    for i, T in enumerate(fg.kdpts):
        for f in fg.flips[i]:
            j = fg.index(T.replace(f.removed, f.inserted).key)
            if Flip(f.inserted, f.removed) not in sets[j]:
                out.append(f"flip {f} from node {i} is not undone at node {j}")
    return out
