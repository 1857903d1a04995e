"""Exact integer predicates and the immutable PointSet container."""

from __future__ import annotations

import enum
import functools
import itertools
import random
from typing import Iterable, Sequence

# |coordinate| <= COORD_BOUND keeps every 2x2 determinant below 2**63.
COORD_BOUND = 2**30


class GeometryError(ValueError):
    """Raised for inputs the exact kernel refuses (overflow, degeneracy)."""


class Orientation(enum.IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


class Containment(enum.Enum):
    OUTSIDE = 0
    ON_BOUNDARY = 1
    STRICTLY_INSIDE = 2


def _check_bound(*pts) -> None:
    for p in pts:
        if abs(p[0]) > COORD_BOUND or abs(p[1]) > COORD_BOUND:
            raise GeometryError(f"coordinate {tuple(p)} exceeds bound {COORD_BOUND}")


def cross(a, b, c) -> int:
    """Twice the signed area of triangle abc."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def orient(a, b, c) -> Orientation:
    _check_bound(a, b, c)
    return Orientation(_sign(cross(a, b, c)))


def convex_hull(points: Sequence) -> list[int]:
    """Counter-clockwise hull vertex indices (monotone chain), collinear points dropped."""
    if len(points) < 3:
        raise GeometryError("convex hull needs at least 3 points")
    order = sorted(range(len(points)), key=lambda i: (points[i][0], points[i][1]))

    def half(seq):
        chain: list[int] = []
        for i in seq:
            while len(chain) >= 2 and cross(points[chain[-2]], points[chain[-1]], points[i]) <= 0:
                chain.pop()
            chain.append(i)
        return chain

    lower = half(order)
    upper = half(reversed(order))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise GeometryError("all points are collinear")
    # start at the smallest index for a stable presentation
    s = hull.index(min(hull))
    return hull[s:] + hull[:s]


def in_triangle(q, a, b, c) -> Containment:
    o = cross(a, b, c)
    if o == 0:
        raise GeometryError("degenerate triangle")
    s = 1 if o > 0 else -1
    d1 = _sign(cross(a, b, q)) * s
    d2 = _sign(cross(b, c, q)) * s
    d3 = _sign(cross(c, a, q)) * s
    if d1 < 0 or d2 < 0 or d3 < 0:
        return Containment.OUTSIDE
    if d1 == 0 or d2 == 0 or d3 == 0:
        return Containment.ON_BOUNDARY
    return Containment.STRICTLY_INSIDE


def segments_properly_intersect(s1, s2) -> bool:
    """Interior-to-interior crossing; touching at a shared endpoint does not count."""
    (p, q), (r, s) = s1, s2
    d1 = _sign(cross(p, q, r))
    d2 = _sign(cross(p, q, s))
    d3 = _sign(cross(r, s, p))
    d4 = _sign(cross(r, s, q))
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    # collinear overlap other than a shared endpoint
    if d1 == d2 == d3 == d4 == 0:
        lo1, hi1 = sorted([tuple(p), tuple(q)])
        lo2, hi2 = sorted([tuple(r), tuple(s)])
        return max(lo1, lo2) < min(hi1, hi2)
    # one segment's endpoint lies in the other's interior
    for (x, y), z, d in (((p, q), r, d1), ((p, q), s, d2), ((r, s), p, d3), ((r, s), q, d4)):
        if d == 0 and segment_contains_point((x, y), z):
            return True
    return False


def segment_contains_point(s, q) -> bool:
    """True iff q lies in the relative interior of segment s."""
    p, r = s
    if cross(p, r, q) != 0:
        return False
    if tuple(q) == tuple(p) or tuple(q) == tuple(r):
        return False
    return min(p[0], r[0]) <= q[0] <= max(p[0], r[0]) and min(p[1], r[1]) <= q[1] <= max(p[1], r[1])


def twice_area(pts: Iterable) -> int:
    """Shoelace sum; positive for counter-clockwise polygons."""
    pts = list(pts)
    return sum(pts[i - 1][0] * pts[i][1] - pts[i][0] * pts[i - 1][1] for i in range(len(pts)))


class PointSet:
    """Distinct integer points in general position with hull metadata.

    Index-based predicates (``orient_idx``, ``crosses``) are backed by a
    lazily built orientation table, so they are cheap enough for the
    enumeration loops.
    """

    def __init__(self, points: Iterable[Sequence[int]]):
        pts = []
        for p in points:
            x, y = p
            if not isinstance(x, int) or not isinstance(y, int) or isinstance(x, bool) or isinstance(y, bool):
                raise GeometryError(f"non-integer coordinate in {p!r}")
            pts.append((x, y))
        _check_bound(*pts)
        if len(set(pts)) != len(pts):
            raise GeometryError("duplicate points")
        if len(pts) < 3:
            raise GeometryError("need at least 3 points")
        for i, j, k in itertools.combinations(range(len(pts)), 3):
            if cross(pts[i], pts[j], pts[k]) == 0:
                raise GeometryError(f"collinear triple {pts[i]}, {pts[j]}, {pts[k]} (indices {i}, {j}, {k})")
        self.points: tuple[tuple[int, int], ...] = tuple(pts)
        self.n = len(pts)
        self.hull: tuple[int, ...] = tuple(convex_hull(pts))
        self.h = len(self.hull)
        self.hull_set = frozenset(self.hull)
        self.interior = tuple(i for i in range(self.n) if i not in self.hull_set)
        self.hull_edges = frozenset(
            (min(a, b), max(a, b)) for a, b in zip(self.hull, self.hull[1:] + self.hull[:1])
        )

    def __repr__(self):
        return f"PointSet({list(self.points)!r})"

    def __eq__(self, other):
        return isinstance(other, PointSet) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __len__(self):
        return self.n

    @functools.cached_property
    def _orient(self) -> list[list[list[int]]]:
        P = self.points
        n = self.n
        return [[[_sign(cross(P[i], P[j], P[k])) for k in range(n)] for j in range(n)] for i in range(n)]

    def orient_idx(self, i: int, j: int, k: int) -> int:
        return self._orient[i][j][k]

    def crosses(self, a: int, b: int, c: int, d: int) -> bool:
        """Proper crossing of segments ab and cd given by indices (general position)."""
        if a == c or a == d or b == c or b == d:
            return False
        o = self._orient
        return o[a][b][c] * o[a][b][d] < 0 and o[c][d][a] * o[c][d][b] < 0

    def in_triangle_idx(self, q: int, a: int, b: int, c: int) -> bool:
        """Strict containment of point q in triangle abc (indices)."""
        o = self._orient
        s = o[a][b][c]
        return o[a][b][q] == s and o[b][c][q] == s and o[c][a][q] == s

    def points_in_triangle(self, a: int, b: int, c: int) -> list[int]:
        return [q for q in range(self.n) if q not in (a, b, c) and self.in_triangle_idx(q, a, b, c)]

    @functools.cached_property
    def angular_rank(self) -> list[dict[int, int]]:
        """rank[v][u]: position of u in the counter-clockwise order of directions around v."""
        P = self.points
        ranks = []
        for v in range(self.n):
            vx, vy = P[v]

            def upper(u):
                dx, dy = P[u][0] - vx, P[u][1] - vy
                return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

            def cmp(u, w):
                hu, hw = upper(u), upper(w)
                if hu != hw:
                    return hu - hw
                return -_sign(cross(P[v], P[u], P[w]))

            order = sorted((u for u in range(self.n) if u != v), key=functools.cmp_to_key(cmp))
            ranks.append({u: r for r, u in enumerate(order)})
        return ranks

    def without(self, idx: int) -> tuple["PointSet", list[int]]:
        """Drop one point; returns the new set and old index of each new index."""
        keep = [i for i in range(self.n) if i != idx]
        return PointSet([self.points[i] for i in keep]), keep


def random_pointset(n: int, rng: random.Random, span: int = 100, max_tries: int = 10000) -> PointSet:
    """Uniform grid points in [0, span]^2, resampled until in general position."""
    if n < 3:
        raise GeometryError("need at least 3 points")
    if (span + 1) ** 2 < n:
        raise GeometryError(f"grid of span {span} cannot hold {n} distinct points")
    for _ in range(max_tries):
        pts = [(rng.randint(0, span), rng.randint(0, span)) for _ in range(n)]
        try:
            return PointSet(pts)
        except GeometryError:
            continue
    raise GeometryError(f"no general-position sample of {n} points after {max_tries} tries")


def convex_pointset(n: int) -> PointSet:
    """n points on the parabola y = x^2 (convex position, no three collinear)."""
    if n < 3:
        raise GeometryError("need at least 3 points")
    return PointSet([(i, i * i) for i in range(n)])
