"""JSON / DOT file formats for point sets, k-DPTs, flip paths and flip graphs."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .doublechain import DoubleChain, is_double_chain
from .flip import Flip, FlipPath
from .flipgraph import FlipGraph
from .geom import GeometryError, PointSet
from .ptcore import KDPT, edge


class FormatError(ValueError):
    """File does not parse into the expected structure."""


def _read(path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: top level must be an object")
    return doc


def dumps(doc) -> str:
    # sorted keys keep output byte-identical across runs
    return json.dumps(doc, sort_keys=True) + "\n"


def _points(doc) -> PointSet:
    pts = doc.get("points")
    if not isinstance(pts, list) or not all(isinstance(p, list) and len(p) == 2 for p in pts):
        raise FormatError("'points' must be a list of [x, y] pairs")
    if not all(type(c) is int for p in pts for c in p):
        raise FormatError("coordinates must be integers")
    try:
        return PointSet([tuple(p) for p in pts])
    except GeometryError as exc:
        raise FormatError(str(exc)) from exc


def pointset_doc(ps: PointSet, dc: Optional[DoubleChain] = None) -> dict:
    doc = {"points": [list(p) for p in ps.points]}
    if dc is not None:
        doc["chains"] = {"p1": list(dc.p1), "p2": list(dc.p2)}
    return doc


def parse_pointset(doc: dict) -> tuple[PointSet, Optional[DoubleChain]]:
    ps = _points(doc)
    chains = doc.get("chains")
    if chains is None:
        return ps, None
    try:
        p1 = tuple(int(i) for i in chains["p1"])
        p2 = tuple(int(i) for i in chains["p2"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError("'chains' needs integer lists 'p1' and 'p2'") from exc
    if any(not 0 <= i < ps.n for i in p1 + p2):
        raise FormatError("chain index out of range")
    bad = is_double_chain(ps, p1, p2)
    if bad:
        raise FormatError("not a double chain: " + "; ".join(bad))
    return ps, DoubleChain(ps, p1, p2)


def load_pointset(path) -> tuple[PointSet, Optional[DoubleChain]]:
    return parse_pointset(_read(path))


def kdpt_doc(T: KDPT, dc: Optional[DoubleChain] = None) -> dict:
    doc = pointset_doc(T.ps, dc)
    doc["edges"] = [list(e) for e in sorted(T.edges)]
    doc["k"] = T.k
    return doc


def parse_kdpt(doc: dict) -> tuple[KDPT, Optional[DoubleChain]]:
    """Returns the k-DPT; raises FormatError on bad structure and InvalidKDPT on bad geometry."""
    ps, dc = parse_pointset(doc)
    raw = doc.get("edges")
    k = doc.get("k")
    if not isinstance(raw, list) or type(k) is not int:
        raise FormatError("'edges' (list of [i, j]) and integer 'k' are required")
    try:
        edges = [edge(int(i), int(j)) for i, j in raw]
    except (TypeError, ValueError) as exc:
        raise FormatError("edges must be pairs of indices") from exc
    if any(not 0 <= v < ps.n for e in edges for v in e) or any(i == j for i, j in edges):
        raise FormatError("edge index out of range or loop")
    return KDPT(ps, edges).check(k), dc


def load_kdpt(path):
    return parse_kdpt(_read(path))


def path_doc(path: FlipPath, n: int) -> dict:
    return {
        "start": path.start.hex(),
        "end": path.end.hex(),
        "n": n,
        "flips": [[list(f.removed), list(f.inserted)] for f in path.flips],
        "fallback": path.fallback,
        "notes": list(path.notes),
    }


def parse_path(doc: dict) -> FlipPath:
    try:
        flips = [Flip(edge(*r), edge(*i)) for r, i in doc["flips"]]
        return FlipPath(bytes.fromhex(doc["start"]), flips, bytes.fromhex(doc["end"]),
                        bool(doc.get("fallback", False)), list(doc.get("notes", [])))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad flip path: {exc}") from exc


def graph_doc(fg: FlipGraph) -> dict:
    return {
        "n": fg.ps.n,
        "k": fg.k,
        "nodes": [key.hex() for key in fg.nodes],
        "edges": [list(e) for e in fg.edges()],
        "components": list(fg.components),
        "component_count": fg.component_count,
    }


def graph_dot(fg: FlipGraph) -> str:
    lines = [f"graph flips_k{fg.k} {{"]
    for i, (key, c) in enumerate(zip(fg.nodes, fg.components)):
        lines.append(f'  {i} [label="{key.hex()}", component={c}];')
    for u, v in fg.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write(path, text: str) -> None:
    Path(path).write_text(text)
