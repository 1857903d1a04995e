"""k-dart pseudo-triangulations as edge sets, with derived faces."""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .geom import PointSet, twice_area

Edge = tuple[int, int]


def edge(i: int, j: int) -> Edge:
    if i == j:
        raise ValueError(f"degenerate edge ({i}, {j})")
    return (i, j) if i < j else (j, i)


class FaceKind(enum.Enum):
    TRIANGLE = "triangle"
    DART = "dart"
    INVALID = "invalid"


@dataclass(frozen=True)
class DartInfo:
    tip: int
    tail: int
    wings: tuple[int, int]  # sorted
    spine: Edge

    @property
    def corners(self) -> tuple[int, int, int]:
        return (self.tip, self.wings[0], self.wings[1])


@dataclass(frozen=True)
class Face:
    walk: tuple[int, ...]
    kind: FaceKind
    dart: Optional[DartInfo] = None


class InvalidKDPT(ValueError):
    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


def _classify(walk, ps: PointSet) -> Face:
    """Classification that never raises; repeated vertices give INVALID."""
    walk = tuple(walk)
    m = len(walk)
    if m < 3 or m > 4 or len(set(walk)) != m:
        return Face(walk, FaceKind.INVALID)
    o = ps._orient
    if m == 3:
        ok = o[walk[0]][walk[1]][walk[2]] > 0
        return Face(walk, FaceKind.TRIANGLE if ok else FaceKind.INVALID)
    # a quadrilateral with exactly one clockwise turn is a simple CCW dart
    reflex = [i for i in range(4) if o[walk[i - 1]][walk[i]][walk[(i + 1) % 4]] < 0]
    if len(reflex) == 1:
        r = reflex[0]
        tail = walk[r]
        tip = walk[(r + 2) % 4]
        w1, w2 = walk[r - 1], walk[(r + 1) % 4]
        return Face(walk, FaceKind.DART, DartInfo(tip, tail, tuple(sorted((w1, w2))), edge(tip, tail)))
    return Face(walk, FaceKind.INVALID)


def classify_face(walk, ps: PointSet) -> Face:
    walk = tuple(walk)
    if len(set(walk)) != len(walk):
        raise ValueError(f"walk {walk} is not a simple polygon")
    return _classify(walk, ps)


class KDPT:
    """A pseudo-triangulation given by its edge set over a PointSet.

    Equality and hashing are by edge set. Faces are derived on demand from
    the angular rotation system and cached; nothing is validated unless
    ``validate`` is called.
    """

    def __init__(self, ps: PointSet, edges: Iterable):
        self.ps = ps
        self.edges = frozenset(edge(*e) for e in edges)

    def __eq__(self, other):
        return isinstance(other, KDPT) and self.edges == other.edges and (self.ps is other.ps or self.ps == other.ps)

    def __hash__(self):
        return hash(self.edges)

    def __repr__(self):
        return f"KDPT(n={self.ps.n}, k={self.k}, edges={sorted(self.edges)})"

    @functools.cached_property
    def key(self) -> bytes:
        return canonical_key(self)

    @functools.cached_property
    def neighbors(self) -> list[list[int]]:
        rank = self.ps.angular_rank
        nb: list[list[int]] = [[] for _ in range(self.ps.n)]
        for i, j in self.edges:
            nb[i].append(j)
            nb[j].append(i)
        for v in range(self.ps.n):
            nb[v].sort(key=rank[v].__getitem__)
        return nb

    @functools.cached_property
    def _walks(self) -> tuple[list[tuple[int, ...]], dict[tuple[int, int], int]]:
        """Bounded face walks (CCW) and a map directed edge -> index of the face on its left."""
        nb = self.neighbors
        pos = [{u: r for r, u in enumerate(lst)} for lst in nb]
        seen = set()
        walks = []
        face_of: dict[tuple[int, int], int] = {}
        # the outer face runs clockwise along the hull; mark it seen up front
        hull = self.ps.hull
        outer = (hull[1], hull[0])
        if hull[0] in pos[hull[1]]:
            u, v = outer
            while (u, v) not in seen:
                seen.add((u, v))
                w = nb[v][pos[v][u] - 1]
                u, v = v, w
        pts = self.ps.points
        for i, j in self.edges:
            for start in ((i, j), (j, i)):
                if start in seen:
                    continue
                walk = []
                u, v = start
                darts = []
                while (u, v) not in seen:
                    seen.add((u, v))
                    darts.append((u, v))
                    walk.append(u)
                    lst = nb[v]
                    w = lst[pos[v][u] - 1]
                    u, v = v, w
                if twice_area(pts[x] for x in walk) > 0:
                    idx = len(walks)
                    walks.append(tuple(walk))
                    for d in darts:
                        face_of[d] = idx
        return walks, face_of

    @property
    def face_walks(self) -> list[tuple[int, ...]]:
        return self._walks[0]

    @property
    def face_of(self) -> dict[tuple[int, int], int]:
        return self._walks[1]

    @functools.cached_property
    def faces(self) -> list[Face]:
        return [_classify(w, self.ps) for w in self.face_walks]

    @functools.cached_property
    def darts(self) -> list[DartInfo]:
        return sorted((f.dart for f in self.faces if f.kind is FaceKind.DART), key=lambda d: d.tail)

    @property
    def k(self) -> int:
        return len(self.darts)

    @property
    def tails(self) -> tuple[int, ...]:
        return tuple(d.tail for d in self.darts)

    def interior_edges(self) -> list[Edge]:
        return sorted(self.edges - self.ps.hull_edges)

    def with_edges(self, edges) -> "KDPT":
        return KDPT(self.ps, edges)

    def replace(self, removed: Edge, inserted: Edge) -> "KDPT":
        T = KDPT.__new__(KDPT)
        T.ps = self.ps
        T.edges = (self.edges - {removed}) | {edge(*inserted)}
        return T

    def validate(self, k: Optional[int] = None) -> list[str]:
        return validate_kdpt(self.ps, self.edges, self.k if k is None else k)

    def check(self, k: Optional[int] = None) -> "KDPT":
        bad = self.validate(k)
        if bad:
            raise InvalidKDPT(bad)
        return self


def _structural_violations(ps: PointSet, edges) -> list[str]:
    out = []
    for i, j in edges:
        if not (0 <= i < ps.n and 0 <= j < ps.n) or i == j:
            out.append(f"edge ({i}, {j}) has invalid endpoints")
    if out:
        return out
    elist = sorted(edges)
    for (a, b), (c, d) in itertools.combinations(elist, 2):
        if ps.crosses(a, b, c, d):
            out.append(f"edges ({a}, {b}) and ({c}, {d}) cross")
    for he in sorted(ps.hull_edges):
        if he not in edges:
            out.append(f"hull edge {he} missing")
    used = set(itertools.chain.from_iterable(edges))
    for v in range(ps.n):
        if v not in used:
            out.append(f"vertex {v} unused")
    # connectivity
    adj: dict[int, set] = {v: set() for v in range(ps.n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    stack, seen = [0], {0}
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != ps.n and not any("unused" in s for s in out):
        out.append("edge set is disconnected")
    return out


def faces(T: KDPT) -> list[tuple[int, ...]]:
    """Bounded faces as CCW walks; raises InvalidKDPT on crossing / missing hull edge / disconnection."""
    bad = _structural_violations(T.ps, T.edges)
    if bad:
        raise InvalidKDPT(bad)
    return list(T.face_walks)


def validate_kdpt(ps: PointSet, edges, k: int) -> list[str]:
    """Empty list iff ``edges`` is a valid k-DPT of ``ps``."""
    edges = frozenset(edge(*e) for e in edges)
    out = _structural_violations(ps, edges)
    if out:
        return out
    T = KDPT(ps, edges)
    fs = T.faces
    for f in fs:
        if f.kind is FaceKind.INVALID:
            out.append(f"face {f.walk} is neither triangle nor dart")
    ndarts = sum(1 for f in fs if f.kind is FaceKind.DART)
    if ndarts != k:
        out.append(f"dart count {ndarts} ≠ {k}")
    tails = [f.dart.tail for f in fs if f.kind is FaceKind.DART]
    if len(set(tails)) != len(tails):
        out.append(f"repeated dart tails {sorted(tails)}")
    for t in tails:
        if t in ps.hull_set:
            out.append(f"dart tail {t} is a hull vertex")
    pointed = _pointed_from_faces(ps, fs, interior_only=True)
    if pointed != set(tails):
        out.append(f"interior pointed vertices {sorted(pointed)} differ from dart tails {sorted(tails)}")
    expected = 3 * ps.n - ps.h - 3 - k
    if len(edges) != expected:
        out.append(f"edge count {len(edges)} ≠ 3n-h-3-k = {expected}")
    nfaces = 2 * ps.n - ps.h - 2 - k
    if len(fs) != nfaces:
        out.append(f"face count {len(fs)} ≠ 2n-h-2-k = {nfaces}")
    area = sum(twice_area(ps.points[v] for v in f.walk) for f in fs)
    hull_area = twice_area(ps.points[v] for v in ps.hull)
    if area != hull_area:
        out.append(f"faces cover area {area}/2, hull has {hull_area}/2")
    return out


def _pointed_from_faces(ps: PointSet, fs, interior_only: bool) -> set[int]:
    o = ps.orient_idx
    out = set()
    for f in fs:
        w = f.walk
        m = len(w)
        for i in range(m):
            if o(w[i - 1], w[i], w[(i + 1) % m]) < 0:
                out.add(w[i])
    if interior_only:
        out -= ps.hull_set
    return out


def pointed_vertices(T: KDPT, interior_only: bool = True) -> set[int]:
    """Vertices with an incident bounded-face angle larger than pi.

    With ``interior_only=False`` hull vertices are included too; every hull
    vertex is pointed through the outer face.
    """
    out = _pointed_from_faces(T.ps, T.faces, interior_only=True)
    if not interior_only:
        out |= set(T.ps.hull)
    return out


def canonical_key(T: KDPT) -> bytes:
    """Sorted edge list flattened to bytes: one byte per index below 256 points, else two (big-endian)."""
    flat = itertools.chain.from_iterable(sorted(T.edges))
    if T.ps.n < 256:
        return bytes(flat)
    return b"".join(v.to_bytes(2, "big") for v in flat)


def key_to_edges(key: bytes, n: int) -> list[Edge]:
    if n < 256:
        vals = list(key)
    else:
        vals = [int.from_bytes(key[i:i + 2], "big") for i in range(0, len(key), 2)]
    return list(zip(vals[0::2], vals[1::2]))


def add_spines(T: KDPT) -> tuple[KDPT, frozenset]:
    spines = frozenset(d.spine for d in T.darts)
    return KDPT(T.ps, T.edges | spines), spines


def remove_spines(Ttri: KDPT, S) -> KDPT:
    S = [edge(*e) for e in S]
    ps = Ttri.ps
    used_faces: dict[int, Edge] = {}
    face_of = Ttri.face_of
    walks = Ttri.face_walks
    for e in S:
        if e in ps.hull_edges:
            raise ValueError(f"{e} is a hull edge")
        if e not in Ttri.edges:
            raise ValueError(f"{e} is not an edge of the triangulation")
        i, j = e
        fa, fb = face_of[(i, j)], face_of[(j, i)]
        for f in (fa, fb):
            if len(walks[f]) != 3:
                raise ValueError(f"{e} is not between two triangles")
            if f in used_faces:
                raise ValueError(f"{e} and {used_faces[f]} share face {walks[f]}")
            used_faces[f] = e
        a = next(v for v in walks[fa] if v not in e)
        b = next(v for v in walks[fb] if v not in e)
        if ps.crosses(i, j, a, b):
            raise ValueError(f"triangles at {e} form a convex quadrilateral")
    return KDPT(ps, Ttri.edges - set(S))
