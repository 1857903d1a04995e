import json

import pytest

from dartflip import formats
from dartflip.checks import DC11
from dartflip.cli import main
from dartflip.render import save_kdpt_svg


@pytest.fixture
def dc11_file(tmp_path):
    p = tmp_path / "dc11.json"
    p.write_text(formats.dumps(formats.pointset_doc(DC11.ps, DC11)))
    return p


def run(argv, capsys):
    rc = main([str(a) for a in argv])
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_gen_is_deterministic(tmp_path, capsys):
    outs = []
    for _ in range(2):
        rc, out, _ = run(["gen", "random", 8, "--seed", 3], capsys)
        assert rc == 0
        outs.append(out)
    assert outs[0] == outs[1]
    rc, out, _ = run(["gen", "double-chain", 2, 1], capsys)
    assert rc == 0 and json.loads(out)["chains"]["p1"] == [0, 1, 2, 3]
    assert run(["gen", "double-chain", 2], capsys)[0] == 2


def test_enum_t4(tmp_path, capsys, t4):
    p = tmp_path / "t4.json"
    p.write_text(formats.dumps(formats.pointset_doc(t4)))
    rc, out, _ = run(["enum", p, "-k", 1], capsys)
    assert rc == 0 and "count\t3" in out


def test_graph_dc11(tmp_path, capsys, dc11_file):
    out_json = tmp_path / "g.json"
    fig = tmp_path / "sizes.svg"
    rc, out, _ = run(["graph", dc11_file, "-k", 1, "-o", out_json, "--figure", fig], capsys)
    assert rc == 0 and "components\t2" in out
    assert json.loads(out_json.read_text())["component_count"] == 2
    assert fig.read_text().startswith("<?xml")
    rc, _, _ = run(["graph", dc11_file, "-k", 1, "-o", tmp_path / "g.dot"], capsys)
    assert rc == 0 and (tmp_path / "g.dot").read_text().startswith("graph")


def test_enum_write_then_canonicalize_and_render(tmp_path, capsys, dc11_file):
    kd = tmp_path / "k.json"
    rc, _, _ = run(["enum", dc11_file, "-k", 2, "--write", kd, "--index", 5], capsys)
    assert rc == 0
    rc, out, err = run(["canonicalize", kd], capsys)
    assert rc == 0 and "designation\t1,1" in err
    path = formats.parse_path(json.loads(out))
    assert path.end != path.start or len(path) == 0
    svg = tmp_path / "k.svg"
    assert run(["render", kd, svg, "--title", "DC11"], capsys)[0] == 0
    first = svg.read_bytes()
    run(["render", kd, svg, "--title", "DC11"], capsys)
    assert svg.read_bytes() == first


def test_predict(tmp_path, capsys, dc11_file):
    rc, out, _ = run(["predict", dc11_file], capsys)
    assert rc == 0 and "match\tyes" in out


def test_exit_codes(tmp_path, capsys, dc11_file):
    bad = tmp_path / "bad.json"
    bad.write_text('{"points": [[0, 0], [1, 1], [2, 2]]}')
    assert run(["enum", bad, "-k", 0], capsys)[0] == 2
    kd = tmp_path / "bad_k.json"
    doc = formats.pointset_doc(DC11.ps, DC11)
    doc.update(edges=[[0, 1]], k=0)
    kd.write_text(json.dumps(doc))
    assert run(["canonicalize", kd], capsys)[0] == 3
    assert run(["enum", dc11_file, "-k", 7], capsys)[0] == 3
    big = tmp_path / "big.json"
    run(["gen", "convex", 12, "-o", big], capsys)
    assert run(["enum", big, "-k", 0], capsys)[0] == 4


def test_cap_override(tmp_path, capsys, dc11_file, monkeypatch):
    monkeypatch.setenv("DARTFLIP_CAP", "5")
    assert run(["enum", dc11_file, "-k", 0], capsys)[0] == 4


def test_verify_doublechain(tmp_path, capsys):
    rep = tmp_path / "report"
    rc, out, _ = run(["verify", "doublechain", "--amax", 1, "--bmax", 1, "--report", rep], capsys)
    assert rc == 0
    assert all(line.startswith("PASS") for line in out.splitlines() if line[:4] in ("PASS", "FAIL"))
    assert (rep / "checks.tsv").read_text().startswith("status\tcheck")
    assert (rep / "components.tsv").exists() and (rep / "components.svg").exists()
    assert json.loads((rep / "failures.json").read_text()) == {}


def test_render_is_byte_identical(tmp_path, dc11):
    from dartflip.doublechain import Designation, canonical_kdpt
    T = canonical_kdpt(dc11, Designation(1, 1))
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    save_kdpt_svg(T, a, dc11)
    save_kdpt_svg(T, b, dc11)
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().count("stroke-dasharray") >= 2
