import json

import pytest

from dartflip import formats
from dartflip.doublechain import Designation, canonical_kdpt, canonicalize, generate
from dartflip.enumeration import all_kdpts
from dartflip.flipgraph import build
from dartflip.ptcore import InvalidKDPT


def test_pointset_round_trip(dc11):
    doc = formats.pointset_doc(dc11.ps, dc11)
    ps, dc = formats.parse_pointset(json.loads(formats.dumps(doc)))
    assert ps == dc11.ps and (dc.p1, dc.p2) == (dc11.p1, dc11.p2)
    assert formats.pointset_doc(ps, dc) == doc


def test_kdpt_round_trip(tmp_path, dc11):
    for T in all_kdpts(dc11.ps, 2):
        p = tmp_path / "t.json"
        formats.write(p, formats.dumps(formats.kdpt_doc(T, dc11)))
        back, _ = formats.load_kdpt(p)
        assert back == T and back.k == 2


def test_path_round_trip():
    dc = generate(2, 1)
    T = all_kdpts(dc.ps, 2).kdpts[all_kdpts(dc.ps, 2).items[-1]]
    path = canonicalize(dc, T)
    doc = formats.path_doc(path, dc.ps.n)
    assert formats.parse_path(json.loads(formats.dumps(doc))) == path


def test_graph_exports(dc11):
    fg = build(dc11.ps, 1)
    doc = json.loads(formats.dumps(formats.graph_doc(fg)))
    assert doc["component_count"] == 2 and len(doc["nodes"]) == 30 and len(doc["edges"]) == 52
    dot = formats.graph_dot(fg)
    assert dot.startswith("graph flips_k1 {") and dot.count("--") == 52


@pytest.mark.parametrize("doc", [
    {},
    {"points": [[0, 0], [1, 0]]},
    {"points": [[0, 0], [1, 0], [2, 0]]},
    {"points": [[0, 0], [1.5, 0], [0, 1]]},
    {"points": [[0, 0], [4, 0], [0, 4]], "chains": {"p1": [0]}},
    {"points": [[0, 0], [4, 0], [0, 4]], "chains": {"p1": [0, 9], "p2": [1, 2]}},
])
def test_bad_pointsets(doc):
    with pytest.raises(formats.FormatError):
        formats.parse_pointset(doc)


def test_bad_kdpt(t4):
    doc = formats.pointset_doc(t4)
    with pytest.raises(formats.FormatError):
        formats.parse_kdpt(doc)
    doc.update(edges=[[0, 1], [1, 2], [0, 2], [0, 3], [1, 3], [2, 3]], k=1)
    with pytest.raises(InvalidKDPT):
        formats.parse_kdpt(doc)
    doc["edges"] = [[0, 0]]
    with pytest.raises(formats.FormatError):
        formats.parse_kdpt(doc)


def test_unreadable_file(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("[1, 2")
    with pytest.raises(formats.FormatError):
        formats.load_pointset(p)


def test_canonical_form_is_stable(dc11):
    T = canonical_kdpt(dc11, Designation(1, 1))
    a = formats.dumps(formats.kdpt_doc(T, dc11))
    back, dc = formats.parse_kdpt(json.loads(a))
    b = formats.dumps(formats.kdpt_doc(back, dc))
    assert a == b
