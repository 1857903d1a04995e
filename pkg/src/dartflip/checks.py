"""Verification suites comparing constructions against brute-force flip graphs.

Each suite returns a ``Check``; the CLI ``verify`` command and the acceptance
tests both run them.  Every k-DPT a suite touches can be fed through a shared
``Structural`` tally, which checks the counting formulas, the spine bijection
and flip involution.
"""

from __future__ import annotations

import functools
import random
import time
from collections import defaultdict
from dataclasses import dataclass, field

from .doublechain import (
    DoubleChain, canonical_kdpt, canonicalize, component_count_formula, constructive_dart_failures,
    dart_shape_failures, designation, feasible_designations, generate,
)
from .enumeration import all_kdpts
from .flip import replay
from .flipgraph import FlipGraph, build, components_by, involution_failures
from .geom import PointSet, random_pointset
from .onedart import (
    dart_triangle_path, in_dart_triangle, predicted_components_1dpt, quintuple_swap_count,
    quintuple_swap_edges, same_tail_path, single_dart,
)
from .ptcore import KDPT, add_spines, remove_spines

MAX_REPORTED = 5


@dataclass
class Check:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status}\t{self.name}\tchecked={self.checked}\tfailures={len(self.failures)}\t{self.seconds:.1f}s"
        for msg in self.failures[:MAX_REPORTED]:
            out += f"\n\t{msg}"
        return out


class Structural:
    """Running tally of formula / bijection / involution checks over touched k-DPTs."""

    def __init__(self):
        self.check = Check("structural")
        self._seen: set = set()

    def kdpt(self, T: KDPT) -> None:
        tag = (T.ps.points, T.key)
        if tag in self._seen:
            return
        self._seen.add(tag)
        c = self.check
        c.checked += 1
        ps, k = T.ps, T.k
        bad = T.validate(k)  # faces, dart count, pointedness, edge/face counts, area partition
        if len(T.edges) != 3 * ps.n - ps.h - 3 - k:
            bad.append(f"{len(T.edges)} edges, expected {3 * ps.n - ps.h - 3 - k}")
        tri, spines = add_spines(T)
        if tri.validate(0):
            bad.append("adding spines does not give a triangulation")
        elif remove_spines(tri, spines) != T:
            bad.append("spine bijection does not round-trip")
        for msg in bad:
            c.fail(f"{ps.points} edges={sorted(T.edges)}: {msg}")

    def graph(self, fg: FlipGraph) -> None:
        for T in fg.kdpts:
            self.kdpt(T)
        if fg.flips is not None:
            for msg in involution_failures(fg):
                self.check.fail(f"{fg.ps.points} k={fg.k}: {msg}")


def _timed(fn):
    @functools.wraps(fn)
    def run(*args, **kwargs):
        t = time.perf_counter()
        out = fn(*args, **kwargs)
        for c in out if isinstance(out, tuple) else (out,):
            c.seconds = time.perf_counter() - t
        return out
    return run


@functools.lru_cache(maxsize=None)
def _dc(a: int, b: int) -> DoubleChain:
    return generate(a, b)


@functools.lru_cache(maxsize=64)
def _dc_kdpts(a: int, b: int, k: int):
    return all_kdpts(_dc(a, b).ps, k, cap=a + b + 4)


def chain_shapes(max_sum: int = 5, amax: int = None, bmax: int = None):
    out = []
    for s in range(max_sum + 1):
        for a in range(s + 1):
            b = s - a
            if (amax is None or a <= amax) and (bmax is None or b <= bmax):
                out.append((a, b))
    return out


@_timed
def doublechain_components(shapes, tally: Structural = None) -> tuple[Check, Check]:
    """Component counts against the closed formula, and components against designations."""
    counts = Check("doublechain component count formula")
    desig = Check("doublechain components = designations")
    for a, b in shapes:
        dc = _dc(a, b)
        for k in range(a + b + 1):
            # only the small shapes are revisited by later suites; caching the rest costs gigabytes
            enum = _dc_kdpts(a, b, k) if a <= 2 and b <= 2 else all_kdpts(dc.ps, k, cap=a + b + 4)
            fg = build(dc.ps, k, cap=a + b + 4, enumeration=enum, keep_flips=tally is not None)
            want = component_count_formula(a, b, k)
            counts.checked += 1
            counts.rows.append((a, b, k, fg.component_count, want))
            if fg.component_count != want:
                counts.fail(f"(a,b,k)=({a},{b},{k}): {fg.component_count} components, formula {want}")
            desig.checked += 1
            labels = [designation(dc, T) for T in fg.kdpts]
            per = components_by(fg, lambda T: designation(dc, T))
            mixed = [c for c in per if len(c) != 1]
            found = [next(iter(c)) for c in per if len(c) == 1]
            if mixed:
                desig.fail(f"({a},{b},{k}): a component mixes designations {dict(mixed[0])}")
            if sorted(found) != feasible_designations(a, b, k):
                desig.fail(f"({a},{b},{k}): designations {sorted(found)} vs feasible {feasible_designations(a, b, k)}")
            for u, v in fg.edges():
                if labels[u] != labels[v]:
                    desig.fail(f"({a},{b},{k}): flip changes designation {labels[u]} -> {labels[v]}")
                    break
            if tally is not None:
                tally.graph(fg)
    return counts, desig


def sample_sets(count: int = 100, seed: int = 0, sizes=(5, 6, 7, 8, 9), span: int = 60) -> list[PointSet]:
    """Random general-position sets with at least one interior point, sizes cycling through ``sizes``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        ps = random_pointset(sizes[len(out) % len(sizes)], rng, span)
        if ps.interior:
            out.append(ps)
    return out


def sample_quintuples(count: int = 100, seed: int = 1, span: int = 60) -> list[PointSet]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        ps = random_pointset(5, rng, span)
        if ps.h == 3:
            out.append(ps)
    return out


def _tail_partition(fg: FlipGraph) -> list[frozenset]:
    parts = defaultdict(set)
    for T, c in zip(fg.kdpts, fg.components):
        parts[c].add(single_dart(T).tail)
    return sorted((frozenset(p) for p in parts.values()), key=min)


@_timed
def one_dart_components(sets, quintuples, tally: Structural = None) -> tuple[Check, Check, Check]:
    pred = Check("1-DPT components = predicted tail partition")
    quint = Check("empty quintuples have 4 tail swaps")
    same = Check("1-DPTs with a common tail share a component")
    for ps in sets:
        fg = build(ps, 1, keep_flips=tally is not None)
        actual = _tail_partition(fg)
        pred.checked += 1
        predicted = predicted_components_1dpt(ps)
        if predicted != actual:
            pred.fail(f"{ps.points}: predicted {[sorted(p) for p in predicted]}, actual {[sorted(p) for p in actual]}")
        same.checked += 1
        comp_of_tail = defaultdict(set)
        for T, c in zip(fg.kdpts, fg.components):
            comp_of_tail[single_dart(T).tail].add(c)
        split = {p: cs for p, cs in comp_of_tail.items() if len(cs) > 1}
        if split:
            same.fail(f"{ps.points}: tails spread over components {split}")
        if tally is not None:
            tally.graph(fg)
    for ps in quintuples:
        quint.checked += 1
        n_swaps = quintuple_swap_count(ps, range(5))
        n_edges = quintuple_swap_edges(ps, range(5))
        if n_swaps != 4:
            quint.fail(f"{ps.points}: {n_swaps} distinct tail swaps")
        quint.rows.append((ps.points, n_swaps, n_edges))
        if tally is not None:
            tally.graph(build(ps, 1, keep_flips=True))
    return pred, quint, same


def _replay_into(path, T, tally, check, what) -> list:
    try:
        states = replay(path, T, validate=True)
    except Exception as exc:  # any replay failure is a counterexample, reported verbatim
        check.fail(f"{what}: replay failed: {exc}")
        return []
    if tally is not None:
        for S in states:
            tally.kdpt(S)
    return states


@_timed
def same_tail_paths(sets, pairs_per_set: int = 2, seed: int = 2, tally: Structural = None) -> Check:
    c = Check("same-tail flip paths replay")
    rng = random.Random(seed)
    fallbacks = 0
    for ps in sets:
        kd = list(all_kdpts(ps, 1))
        by_tail = defaultdict(list)
        for T in kd:
            by_tail[single_dart(T).tail].append(T)
        for _ in range(pairs_per_set):
            group = by_tail[rng.choice(sorted(by_tail))]
            T1, T2 = rng.choice(group), rng.choice(group)
            c.checked += 1
            what = f"{ps.points} {sorted(T1.edges)} -> {sorted(T2.edges)}"
            try:
                path = same_tail_path(T1, T2)
            except Exception as exc:
                c.fail(f"{what}: {exc}")
                continue
            fallbacks += path.fallback
            states = _replay_into(path, T1, tally, c, what)
            if states and states[-1] != T2:
                c.fail(f"{what}: path ends elsewhere")
    c.rows.append(("fallbacks", fallbacks))
    return c


@_timed
def dart_triangle_paths(sets, max_n: int = 8, tally: Structural = None) -> Check:
    c = Check("dart-triangle flip paths")
    for ps in sets:
        if ps.n > max_n:
            continue
        for T in all_kdpts(ps, 1):
            c.checked += 1
            what = f"{ps.points} {sorted(T.edges)}"
            try:
                path = dart_triangle_path(T)
            except Exception as exc:
                c.fail(f"{what}: {exc}")
                continue
            states = _replay_into(path, T, tally, c, what)
            if not states:
                continue
            d0, d1 = single_dart(T), single_dart(states[-1])
            if (d0.tip, d0.tail) != (d1.tip, d1.tail):
                c.fail(f"{what}: tip/tail changed to {(d1.tip, d1.tail)}")
            elif not in_dart_triangle(states[-1]):
                c.fail(f"{what}: final dart triangle is not empty")
    return c


@_timed
def canonical_paths(amax: int = 2, bmax: int = 2, tally: Structural = None) -> Check:
    c = Check("double-chain canonicalization")
    for a in range(amax + 1):
        for b in range(bmax + 1):
            dc = _dc(a, b)
            for k in range(a + b + 1):
                for T in _dc_kdpts(a, b, k):
                    c.checked += 1
                    des = designation(dc, T)
                    what = f"({a},{b},{k}) {sorted(T.edges)}"
                    try:
                        path = canonicalize(dc, T)
                    except Exception as exc:
                        c.fail(f"{what}: {exc}")
                        continue
                    states = _replay_into(path, T, tally, c, what)
                    if not states:
                        continue
                    if states[-1] != canonical_kdpt(dc, des):
                        c.fail(f"{what}: ends away from the canonical k-DPT")
                    if any(designation(dc, S) != des for S in states):
                        c.fail(f"{what}: designation changes along the path")
    return c


@_timed
def dart_shapes(amax: int = 2, bmax: int = 2) -> Check:
    c = Check("double-chain dart classification and shapes")
    for a in range(amax + 1):
        for b in range(bmax + 1):
            dc = _dc(a, b)
            c.checked += 1
            for msg in constructive_dart_failures(dc):
                c.fail(f"({a},{b}): {msg}")
            for k in range(a + b + 1):
                for T in _dc_kdpts(a, b, k):
                    c.checked += 1
                    for msg in dart_shape_failures(dc, T):
                        c.fail(f"({a},{b},{k}) {sorted(T.edges)}: {msg}")
    return c


T4 = PointSet([(0, 0), (4, 0), (2, 4), (2, 1)])
CONVEX5 = PointSet([(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)])
DC11 = DoubleChain(PointSet([(0, 10), (5, 8), (10, 10), (0, 0), (5, 2), (10, 0)]), (0, 1, 2), (3, 4, 5))


@_timed
def micro_fixtures(tally: Structural = None) -> Check:
    c = Check("micro fixtures")

    def graph(ps, k):
        fg = build(ps, k, keep_flips=tally is not None)
        if tally is not None:
            tally.graph(fg)
        return fg

    fg = graph(T4, 1)
    c.checked += 1
    if (len(fg.nodes), fg.edge_count, fg.component_count) != (3, 3, 1):
        c.fail(f"T4 k=1: {len(fg.nodes)} nodes, {fg.edge_count} edges, {fg.component_count} components")
    fg = graph(CONVEX5, 0)
    c.checked += 1
    degrees = sorted(len(a) for a in fg.adjacency)
    if (len(fg.nodes), fg.edge_count, fg.component_count, degrees) != (5, 5, 1, [2] * 5):
        c.fail(f"CONVEX5 k=0 is not a 5-cycle: degrees {degrees}")
    got = []
    for k in range(3):
        c.checked += 1
        got.append(graph(DC11.ps, k).component_count)
    if got != [1, 2, 1]:
        c.fail(f"DC11 components for k=0,1,2: {got}")
    return c


def acceptance(quick: bool = False) -> list[Check]:
    """All acceptance suites in order, followed by the structural tally over everything they touched."""
    tally = Structural()
    shapes = chain_shapes(3 if quick else 5)
    n_sets = 20 if quick else 100
    sets = sample_sets(n_sets)
    quints = sample_quintuples(n_sets)
    counts, desig = doublechain_components(shapes, tally)
    pred, quint, same = one_dart_components(sets, quints, tally)
    paths = same_tail_paths(sets, tally=tally)
    same.checked += paths.checked
    same.failures += paths.failures
    same.rows += paths.rows
    same.seconds += paths.seconds
    tri = dart_triangle_paths(sets, tally=tally)
    canon = canonical_paths(1 if quick else 2, 1 if quick else 2, tally=tally)
    shapes_check = dart_shapes(1 if quick else 2, 1 if quick else 2)
    micro = micro_fixtures(tally)
    pred.name += "; quintuple tail swaps"
    pred.checked += quint.checked
    pred.failures += quint.failures
    return [counts, desig, pred, same, tri, canon, shapes_check, tally.check, micro]
