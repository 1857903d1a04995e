"""Diagonal-exchange flips on k-DPTs, found by exhaustive re-chording of the merged face."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .ptcore import KDPT, Edge, FaceKind, InvalidKDPT, _classify, edge


class FlipInvariantError(RuntimeError):
    """More than two chords re-split a merged face; indicates a geometry bug."""


@dataclass(frozen=True, order=True)
class Flip:
    removed: Edge
    inserted: Edge


@dataclass
class FlipPath:
    start: bytes
    flips: list[Flip]
    end: bytes
    fallback: bool = False
    notes: list[str] = field(default_factory=list)

    def __len__(self):
        return len(self.flips)

    def reversed(self) -> "FlipPath":
        return FlipPath(self.end, [Flip(f.inserted, f.removed) for f in reversed(self.flips)], self.start,
                        self.fallback, list(self.notes))

    def then(self, other: "FlipPath") -> "FlipPath":
        if other.start != self.end:
            raise ValueError("paths do not meet")
        return FlipPath(self.start, self.flips + other.flips, other.end,
                        self.fallback or other.fallback, self.notes + other.notes)


def merged_face(T: KDPT, e) -> tuple[int, ...]:
    """Cyclic walk of the region left after deleting interior edge e.

    When the two faces share a second edge, the walk passes the vertex at the
    end of that slit twice.
    """
    e = edge(*e)
    if e not in T.edges:
        raise ValueError(f"{e} is not an edge")
    if e in T.ps.hull_edges:
        raise ValueError(f"{e} is a hull edge")
    u, v = e
    walks, face_of = T.face_walks, T.face_of
    f1 = walks[face_of[(u, v)]]
    f2 = walks[face_of[(v, u)]]
    f1 = _rotate_to(f1, u, v)
    f2 = _rotate_to(f2, v, u)
    return (v,) + f1[2:] + (u,) + f2[2:]


def _rotate_to(walk, a, b):
    m = len(walk)
    for i in range(m):
        if walk[i] == a and walk[(i + 1) % m] == b:
            return walk[i:] + walk[:i]
    raise AssertionError(f"directed edge {a}->{b} not on walk {walk}")


def _in_wedge(ps, walk, i, d) -> bool:
    m = len(walk)
    w, a, b = walk[i], walk[(i + 1) % m], walk[i - 1]
    if a == b:
        return d != a
    o = ps.orient_idx
    if o(w, a, b) > 0:
        return o(w, a, d) > 0 and o(w, d, b) > 0
    return not (o(w, b, d) >= 0 and o(w, d, a) >= 0)


def candidate_chords(walk, T: KDPT, removed: Optional[Edge] = None) -> list[Edge]:
    """Chords of a merged face that split it into two triangle/dart faces.

    ``removed`` is the edge that was deleted to form the walk; it is not
    treated as an obstacle.
    """
    ps = T.ps
    existing = T.edges - {edge(*removed)} if removed is not None else T.edges
    m = len(walk)
    sides = [(walk[t], walk[(t + 1) % m]) for t in range(m)]
    out = set()
    for i in range(m):
        for j in range(i + 2, m):
            if i == 0 and j == m - 1:
                continue
            u, v = walk[i], walk[j]
            if u == v:
                continue
            c = edge(u, v)
            if c in existing or c in out:
                continue
            if not (_in_wedge(ps, walk, i, v) and _in_wedge(ps, walk, j, u)):
                continue
            if any(ps.crosses(u, v, x, y) for x, y in sides):
                continue
            left = _classify(walk[i:j + 1], ps)
            right = _classify(walk[j:] + walk[:i + 1], ps)
            if left.kind is FaceKind.INVALID or right.kind is FaceKind.INVALID:
                continue
            out.add(c)
    return sorted(out)


def flip(T: KDPT, e) -> Optional[KDPT]:
    """Exchange interior edge e for the other diagonal of its pseudo-quadrilateral.

    Returns None when e is not flippable (its merged face is a pseudo-triangle).
    """
    c = flip_target(T, e)
    return None if c is None else T.replace(edge(*e), c)


def flip_target(T: KDPT, e) -> Optional[Edge]:
    e = edge(*e)
    walk = merged_face(T, e)
    if len(walk) == 4 and len(set(walk)) == 4:
        # two triangles: Lawson flip iff the quadrilateral is convex
        v, x, u, y = walk
        return edge(x, y) if T.ps.crosses(u, v, x, y) else None
    cands = candidate_chords(walk, T, removed=e)
    if e not in cands:
        raise FlipInvariantError(f"removed edge {e} does not re-split merged face {walk}")
    if len(cands) > 2:
        raise FlipInvariantError(f"merged face {walk} admits chords {cands}")
    others = [c for c in cands if c != e]
    return others[0] if others else None


def flippable_edges(T: KDPT) -> list[Flip]:
    out = []
    for e in T.interior_edges():
        c = flip_target(T, e)
        if c is not None:
            out.append(Flip(e, c))
    return out


def neighbors(T: KDPT) -> list[KDPT]:
    return [T.replace(f.removed, f.inserted) for f in flippable_edges(T)]


class ReplayError(RuntimeError):
    def __init__(self, msg, state=None, step=None):
        super().__init__(msg)
        self.state = state
        self.step = step


def apply_flip(T: KDPT, f: Flip, validate: bool = False) -> KDPT:
    """Apply one recorded flip, checking that it is a legal flip of T."""
    if f.removed not in T.edges:
        raise ReplayError(f"{f.removed} absent", T, f)
    c = flip_target(T, f.removed)
    if c != f.inserted:
        raise ReplayError(f"flipping {f.removed} gives {c}, expected {f.inserted}", T, f)
    nxt = T.replace(f.removed, f.inserted)
    if validate:
        bad = nxt.validate(T.k)
        if bad:
            raise ReplayError("; ".join(bad), nxt, f)
    return nxt


def replay(path: FlipPath, T: KDPT, validate: bool = True) -> list[KDPT]:
    """All states along ``path`` starting from T; raises ReplayError on any illegal step."""
    if T.key != path.start:
        raise ReplayError("start state does not match path", T)
    states = [T]
    k = T.k
    for f in path.flips:
        nxt = apply_flip(states[-1], f)
        if validate:
            bad = nxt.validate(k)
            if bad:
                raise ReplayError("; ".join(bad), nxt, f)
        states.append(nxt)
    if states[-1].key != path.end:
        raise ReplayError("end state does not match path", states[-1])
    return states


class PathBuilder:
    """Accumulates flips from a start state, optionally validating each step."""

    def __init__(self, T: KDPT, validate: bool = False):
        self.start = T
        self.cur = T
        self.flips: list[Flip] = []
        self.validate = validate
        self.notes: list[str] = []

    def flip(self, e) -> Edge:
        e = edge(*e)
        c = flip_target(self.cur, e)
        if c is None:
            raise ReplayError(f"edge {e} is not flippable", self.cur)
        self.push(Flip(e, c))
        return c

    def push(self, f: Flip) -> None:
        nxt = apply_flip(self.cur, f)
        if self.validate:
            bad = nxt.validate(self.cur.k)
            if bad:
                raise InvalidKDPT(bad)
        self.flips.append(f)
        self.cur = nxt

    def extend(self, path: FlipPath) -> None:
        for f in path.flips:
            self.push(f)

    def path(self, fallback: bool = False) -> FlipPath:
        return FlipPath(self.start.key, list(self.flips), self.cur.key, fallback, list(self.notes))
