"""Double chains: generation, dart designation, canonical k-DPTs and canonicalizing flip paths."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .flip import FlipPath, PathBuilder
from .geom import COORD_BOUND, GeometryError, PointSet, twice_area
from .ptcore import KDPT, DartInfo, FaceKind, InvalidKDPT, _classify, add_spines, edge
from .enumeration import complete_triangulation
from .onedart import constrained_flip_path, transfer


class DoubleChainError(ValueError):
    pass


class StageError(RuntimeError):
    """A canonicalization stage did not reach its expected intermediate state."""

    def __init__(self, msg, state: Optional[KDPT] = None):
        super().__init__(msg)
        self.state = state


@dataclass(frozen=True)
class DoubleChain:
    ps: PointSet
    p1: tuple[int, ...]  # upper chain, left to right
    p2: tuple[int, ...]  # lower chain, left to right

    @property
    def a(self) -> int:
        return len(self.p1) - 2

    @property
    def b(self) -> int:
        return len(self.p2) - 2

    def chain_of(self, v: int) -> int:
        return 1 if v in self._pos1 else 2

    @property
    def _pos1(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.p1)}

    @property
    def _pos2(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.p2)}


class Designation(NamedTuple):
    k1: int
    k2: int


class DartClass(enum.Enum):
    ALIGNED = "aligned"
    CROSSING = "crossing"


def generate(a: int, b: int) -> DoubleChain:
    """Integer double chain with parabolic chains; P1 = indices 0..a+1 (upper), P2 follow."""
    if a < 0 or b < 0:
        raise DoubleChainError("a and b must be non-negative")
    width = 10 * (a + 1) * (b + 1)
    c = 1
    m = max(a, b, 1)
    height = 2 * c * m * (m + 1) + 2
    for _ in range(1000):
        p1 = [(width * i // (a + 1), height - c * i * (a + 1 - i)) for i in range(a + 2)]
        p2 = [(width * j // (b + 1), c * j * (b + 1 - j)) for j in range(b + 2)]
        if any(abs(v) > COORD_BOUND for pt in p1 + p2 for v in pt):
            raise DoubleChainError(f"double chain ({a}, {b}) exceeds the coordinate bound")
        try:
            ps = PointSet(p1 + p2)
        except GeometryError:
            height += 1
            continue
        dc = DoubleChain(ps, tuple(range(a + 2)), tuple(range(a + 2, a + b + 4)))
        if not is_double_chain(ps, dc.p1, dc.p2):
            return dc
        height += 1
    raise DoubleChainError(f"could not place double chain ({a}, {b})")


def is_double_chain(ps: PointSet, p1, p2) -> list[str]:
    """Violations of the double-chain invariants; empty means ok."""
    p1, p2 = list(p1), list(p2)
    out = []
    if len(p1) < 2 or len(p2) < 2:
        return ["each chain needs at least two points"]
    if sorted(p1 + p2) != list(range(ps.n)):
        return ["chains do not partition the point set"]
    P = ps.points
    for name, ch in (("P1", p1), ("P2", p2)):
        if any(P[ch[i]][0] >= P[ch[i + 1]][0] for i in range(len(ch) - 1)):
            out.append(f"{name} not ordered by increasing x")
    corners = {p1[0], p1[-1], p2[0], p2[-1]}
    if set(ps.hull) != corners:
        out.append(f"hull {sorted(ps.hull)} is not the 4 chain endpoints {sorted(corners)}")
    o = ps.orient_idx
    for i in range(1, len(p1) - 1):
        if o(p1[i - 1], p1[i], p1[i + 1]) <= 0:
            out.append(f"P1 not concave at {p1[i]}")
    for i in range(1, len(p2) - 1):
        if o(p2[i - 1], p2[i], p2[i + 1]) >= 0:
            out.append(f"P2 not concave at {p2[i]}")
    d1 = (p1[0], p2[-1])
    d2 = (p2[0], p1[-1])
    for q in p1[1:-1]:
        if o(*d1, q) <= 0 or o(*d2, q) <= 0:
            out.append(f"P1 hull crosses a diagonal at {q}")
    for q in p2[1:-1]:
        if o(*d1, q) >= 0 or o(*d2, q) >= 0:
            out.append(f"P2 hull crosses a diagonal at {q}")
    return out


def designation(dc: DoubleChain, T: KDPT) -> Designation:
    pos1 = dc._pos1
    k1 = sum(1 for t in T.tails if t in pos1)
    return Designation(k1, T.k - k1)


def classify_dart_dc(dc: DoubleChain, dart: DartInfo) -> DartClass:
    c_tip, c_tail = dc.chain_of(dart.tip), dc.chain_of(dart.tail)
    if c_tip != c_tail:
        return DartClass.CROSSING
    pos = dc._pos1 if c_tail == 1 else dc._pos2
    if abs(pos[dart.tip] - pos[dart.tail]) == 1:
        return DartClass.ALIGNED
    raise AssertionError(f"dart {dart} is neither aligned nor crossing")


def _quad(ps: PointSet, walk):
    w = tuple(walk)
    if twice_area([ps.points[v] for v in w]) < 0:
        w = w[::-1]
    return _classify(w, ps)


def dart_shape_failures(dc: DoubleChain, T: KDPT) -> list[str]:
    """Structural facts about the darts of a k-DPT on a double chain.

    Aligned darts have exactly one wing on the other chain; crossing darts
    have their wings and tail consecutive on one chain.
    """
    out = []
    for d in T.darts:
        try:
            cls = classify_dart_dc(dc, d)
        except AssertionError as exc:
            out.append(str(exc))
            continue
        X = dc.p1 if dc.chain_of(d.tail) == 1 else dc.p2
        if cls is DartClass.ALIGNED:
            if sum(1 for w in d.wings if w not in X) != 1:
                out.append(f"aligned dart {d} does not have one wing on the other chain")
        else:
            i = X.index(d.tail)
            if set(d.wings) != {X[i - 1], X[i + 1]}:
                out.append(f"crossing dart {d} has wings not next to its tail")
    return out


def constructive_dart_failures(dc: DoubleChain) -> list[str]:
    """Quadrilaterals that every tip/wing choice should turn into darts, and do not.

    Aligned: spine between neighbours on a chain, one wing per chain; the tail
    is the spine end nearer the in-chain wing's far side.  Crossing: tail with
    both chain neighbours as wings and any tip on the other chain.
    """
    ps = dc.ps
    out = []
    for X, Y in ((dc.p1, dc.p2), (dc.p2, dc.p1)):
        for i in range(len(X) - 1):
            for w in X:
                j = X.index(w)
                if j in (i, i + 1):
                    continue
                tail, tip = (X[i + 1], X[i]) if j > i + 1 else (X[i], X[i + 1])
                if tail in ps.hull_set:
                    continue
                for o in Y:
                    f = _quad(ps, (tip, o, tail, w))
                    if f.kind is not FaceKind.DART or (f.dart.tip, f.dart.tail) != (tip, tail):
                        out.append(f"aligned quad tip={tip} tail={tail} wings={o},{w} is {f.kind.name}")
        for t in range(1, len(X) - 1):
            for o in Y:
                f = _quad(ps, (o, X[t - 1], X[t], X[t + 1]))
                if f.kind is not FaceKind.DART or (f.dart.tip, f.dart.tail) != (o, X[t]):
                    out.append(f"crossing quad tip={o} tail={X[t]} is {f.kind.name}")
    return out


def feasible_designations(a: int, b: int, k: int) -> list[Designation]:
    return [Designation(k1, k - k1) for k1 in range(k + 1) if k1 <= a and k - k1 <= b]


def component_count_formula(a: int, b: int, k: int) -> int:
    if not 0 <= k <= a + b:
        raise ValueError(f"k = {k} outside 0..{a + b}")
    return min(a, b, k, a + b - k) + 1


def canonical_darts(dc: DoubleChain, d: Designation) -> list[tuple[int, int, int, int]]:
    """(tip, tail, opposite-chain wing, in-chain wing) for each canonical dart."""
    k1, k2 = d
    if not (0 <= k1 <= dc.a and 0 <= k2 <= dc.b):
        raise DoubleChainError(f"designation {tuple(d)} out of bounds for a={dc.a}, b={dc.b}")
    p1, p2 = dc.p1, dc.p2
    out = [(p1[i - 1], p1[i], p2[0], p1[-1]) for i in range(1, k1 + 1)]
    anchor = p1[k1]  # rightmost P1 tail, or the leftmost P1 point when k1 = 0
    out += [(p2[i - 1], p2[i], anchor, p2[-1]) for i in range(1, k2 + 1)]
    return out


def canonical_kdpt(dc: DoubleChain, d: Designation) -> KDPT:
    darts = canonical_darts(dc, d)
    forced = set()
    spines = set()
    for tip, tail, w1, w2 in darts:
        forced |= {edge(tip, w1), edge(tip, w2), edge(tail, w1), edge(tail, w2)}
        spines.add(edge(tip, tail))
    T = complete_triangulation(dc.ps, forced, spines)
    return T.check(sum(d))


# ---------------------------------------------------------------------------
# canonicalizing flip sequence
#
# Work happens in the middle region between the chains.  Every chain segment
# (X[x], X[x+1]) borders exactly one middle triangle of add_spines(T); its
# third vertex lies on the other chain and its index there is the segment's
# "level".  Lowering a level by one is a single flip of the segment's left rung.


class _Side:
    def __init__(self, dc: DoubleChain, which: int):
        self.dc = dc
        self.X, self.Y = (dc.p1, dc.p2) if which == 1 else (dc.p2, dc.p1)
        self.which = which
        self.posY = {v: i for i, v in enumerate(self.Y)}

    def level(self, T: KDPT, x: int) -> int:
        tri, _ = add_spines(T)
        X = self.X
        d = (X[x + 1], X[x]) if self.which == 1 else (X[x], X[x + 1])
        walk = tri.face_walks[tri.face_of[d]]
        third = next(v for v in walk if v not in d)
        if third not in self.posY:
            raise StageError(f"segment {d} has no middle triangle", T)
        return self.posY[third]

    def darts(self, T: KDPT) -> list[DartInfo]:
        X = set(self.X)
        return [d for d in T.darts if d.tail in X]


def _flatten(pb: PathBuilder, side: _Side, upto: int, anchor: int) -> None:
    X, Y = side.X, side.Y
    for x in range(upto + 1):
        lev = side.level(pb.cur, x)
        while lev > anchor:
            pb.flip(edge(X[x], Y[lev]))
            new = side.level(pb.cur, x)
            if new >= lev:
                raise StageError(f"level of segment {x} did not drop ({lev} -> {new})", pb.cur)
            lev = new
        if lev < anchor:
            raise StageError(f"segment {x} is left of the anchor", pb.cur)


def _dart_at(side: _Side, T: KDPT, tail: int) -> DartInfo:
    for d in T.darts:
        if d.tail == side.X[tail]:
            return d
    raise StageError(f"no dart with tail {side.X[tail]}", T)


def _slide_darts(pb: PathBuilder, side: _Side, anchor: int) -> None:
    """Settle the chain's darts left to right as aligned darts with tails at positions 1..k.

    Each dart is walked left through crossing positions, aligned by flipping
    the chain edge left of its tail, and finally its in-chain wing is pushed
    to the last point of the chain.
    """
    X = side.X
    pos = {v: i for i, v in enumerate(X)}
    o = side.Y[anchor]
    tails = sorted(pos[d.tail] for d in side.darts(pb.cur))
    for m, t in enumerate(tails, start=1):
        for _ in range(4 * len(X) + 4):
            d = _dart_at(side, pb.cur, t)
            if d.tip not in pos:  # crossing
                if t > m:
                    pb.flip(edge(X[t - 1], o))
                    t -= 1
                    if _dart_at(side, pb.cur, t).tip != o:
                        raise StageError(f"crossing dart did not move to tail {X[t]}", pb.cur)
                else:
                    pb.flip(edge(X[t - 1], X[t]))
                    if _dart_at(side, pb.cur, t).tip != X[t - 1]:
                        raise StageError(f"crossing dart at {X[t]} did not become aligned", pb.cur)
            elif pos[d.tip] == t + 1:
                pb.flip(edge(X[t], o))
                if _dart_at(side, pb.cur, t).tip != o:
                    raise StageError(f"aligned dart at {X[t]} did not become crossing", pb.cur)
            elif t > m:
                pb.flip(edge(X[t - 1], o))
                t -= 1
                if _dart_at(side, pb.cur, t).tip != o:
                    raise StageError(f"aligned dart did not move to tail {X[t]}", pb.cur)
            else:
                break
        else:
            raise StageError(f"dart {m} did not settle", pb.cur)
        _push_wing(pb, side, t)


def _push_wing(pb: PathBuilder, side: _Side, t: int) -> None:
    X = side.X
    pos = {v: i for i, v in enumerate(X)}
    while True:
        d = _dart_at(side, pb.cur, t)
        w = next(v for v in d.wings if v in pos)
        if w == X[-1]:
            return
        pb.flip(edge(d.tip, w))
        nd = _dart_at(side, pb.cur, t)
        nw = next((v for v in nd.wings if v in pos), None)
        if nd.tip != d.tip or nw is None or pos[nw] <= pos[w]:
            raise StageError(f"wing of dart at {X[t]} did not move right of {w}", pb.cur)


def canonicalize(dc: DoubleChain, T: KDPT) -> FlipPath:
    """Flip path from T to the canonical k-DPT of its designation; every state is validated."""
    bad = T.validate(T.k)
    if bad:
        raise InvalidKDPT(bad)
    des = designation(dc, T)
    target = canonical_kdpt(dc, des)
    pb = PathBuilder(T, validate=True)
    if T == target:
        return pb.path()
    k1 = des.k1
    for which, anchor in ((1, 0), (2, k1)):
        side = _Side(dc, which)
        pos = {v: i for i, v in enumerate(side.X)}
        darts = side.darts(pb.cur)
        if darts:
            upto = max(pos[d.tail] for d in darts)
            _flatten(pb, side, min(upto, len(side.X) - 2), anchor)
            _slide_darts(pb, side, anchor)
        if designation(dc, pb.cur) != des:
            raise StageError("designation changed", pb.cur)
    want = {(tip, tail) for tip, tail, *_ in canonical_darts(dc, des)}
    have = {(d.tip, d.tail) for d in pb.cur.darts}
    if want != have or {d.corners for d in pb.cur.darts} != {d.corners for d in target.darts}:
        raise StageError(f"darts {sorted(have)} are not the canonical {sorted(want)}", pb.cur)
    D = set()
    for d in pb.cur.darts:
        D |= {edge(d.tip, w) for w in d.wings} | {edge(d.tail, w) for w in d.wings} | {d.spine}
    tri, _ = add_spines(pb.cur)
    goal, _ = add_spines(target)
    pb.extend(transfer(constrained_flip_path(tri, goal, D), pb.cur))
    if pb.cur != target:
        raise StageError("did not reach the canonical k-DPT", pb.cur)
    return pb.path()
