"""dartflip command line: generate point sets, enumerate, build flip graphs, verify."""

from __future__ import annotations

import argparse
import json
import random
import sys
from collections import Counter
from pathlib import Path

from . import checks, formats
from .doublechain import DoubleChainError, StageError, canonicalize, designation, generate
from .enumeration import CapExceeded, all_kdpts, size_cap
from .flip import FlipInvariantError
from .flipgraph import build, stats
from .geom import GeometryError, convex_pointset, random_pointset
from .onedart import PathError, predicted_components_1dpt
from .ptcore import InvalidKDPT

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_CAP, EXIT_INVARIANT = 0, 2, 3, 4, 5


def _emit(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        formats.write(out, text)


def cmd_gen(args) -> int:
    dc = None
    if args.kind == "double-chain":
        if len(args.params) != 2:
            raise formats.FormatError("double-chain needs a and b")
        dc = generate(*args.params)
        ps = dc.ps
    elif args.kind == "random":
        if len(args.params) != 1:
            raise formats.FormatError("random needs n")
        ps = random_pointset(args.params[0], random.Random(args.seed), args.span)
    else:
        if len(args.params) != 1:
            raise formats.FormatError("convex needs n")
        ps = convex_pointset(args.params[0])
    _emit(formats.dumps(formats.pointset_doc(ps, dc)), args.out)
    return EXIT_OK


def cmd_enum(args) -> int:
    ps, dc = formats.load_pointset(args.pointset)
    res = all_kdpts(ps, args.k)
    if args.write:
        if not 0 <= args.index < res.count:
            raise formats.FormatError(f"--index {args.index} outside 0..{res.count - 1}")
        formats.write(args.write, formats.dumps(formats.kdpt_doc(res.kdpts[res.items[args.index]], dc)))
    print(f"n\t{ps.n}\nh\t{ps.h}\nk\t{args.k}\ncount\t{res.count}")
    print("tails\tcount")
    for tails, c in sorted(res.by_tail.items()):
        print(f"{','.join(map(str, tails)) or '-'}\t{c}")
    if dc is not None:
        print("designation\tcount")
        for d, c in sorted(Counter(designation(dc, T) for T in res).items()):
            print(f"{d.k1},{d.k2}\t{c}")
    return EXIT_OK


def cmd_graph(args) -> int:
    ps, _ = formats.load_pointset(args.pointset)
    fg = build(ps, args.k)
    st = stats(fg)
    if args.out:
        text = formats.graph_dot(fg) if str(args.out).endswith(".dot") else formats.dumps(formats.graph_doc(fg))
        _emit(text, args.out)
    for key, val in st.items():
        print(f"{key}\t{','.join(map(str, val)) if isinstance(val, list) else val}")
    if args.figure:
        from .render import save_component_sizes
        save_component_sizes(fg.component_sizes, args.figure, f"n={ps.n}, k={args.k}")
    return EXIT_OK


def cmd_predict(args) -> int:
    ps, _ = formats.load_pointset(args.pointset)
    parts = predicted_components_1dpt(ps)
    print("part\ttails")
    for i, p in enumerate(parts):
        print(f"{i}\t{','.join(map(str, sorted(p)))}")
    if ps.n > size_cap():
        print("brute_force\tskipped (n above cap)")
        return EXIT_OK
    fg = build(ps, 1)
    actual = checks._tail_partition(fg)
    same = actual == parts
    print(f"brute_force_components\t{fg.component_count}\nmatch\t{'yes' if same else 'no'}")
    return EXIT_OK if same else EXIT_INVARIANT


def cmd_canonicalize(args) -> int:
    T, dc = formats.load_kdpt(args.kdpt)
    if dc is None:
        raise formats.FormatError("k-DPT file has no 'chains'; canonicalize needs a double chain")
    path = canonicalize(dc, T)
    _emit(formats.dumps(formats.path_doc(path, T.ps.n)), args.out)
    print(f"designation\t{designation(dc, T).k1},{designation(dc, T).k2}\nflips\t{len(path)}",
          file=sys.stderr)
    return EXIT_OK


def cmd_render(args) -> int:
    from .render import save_kdpt_svg
    T, dc = formats.load_kdpt(args.kdpt)
    save_kdpt_svg(T, args.out, dc, args.title)
    return EXIT_OK


def _suite(args) -> list:
    if args.suite == "acceptance":
        return checks.acceptance(quick=args.quick)
    tally = checks.Structural()
    if args.suite == "onedart":
        sets = checks.sample_sets(args.count, args.seed)
        quints = checks.sample_quintuples(args.count, args.seed + 1)
        out = list(checks.one_dart_components(sets, quints, tally))
        out.append(checks.same_tail_paths(sets, seed=args.seed + 2, tally=tally))
        out.append(checks.dart_triangle_paths(sets, tally=tally))
    elif args.suite == "doublechain":
        shapes = checks.chain_shapes(args.amax + args.bmax, args.amax, args.bmax)
        out = list(checks.doublechain_components(shapes, tally))
        out.append(checks.canonical_paths(args.amax, args.bmax, tally))
        out.append(checks.dart_shapes(args.amax, args.bmax))
    else:  # structural
        out = [checks.micro_fixtures(tally)]
        for ps in checks.sample_sets(args.count, args.seed, sizes=(5, 6, 7)):
            for k in range(min(ps.n - ps.h, 2) + 1):
                tally.graph(build(ps, k, keep_flips=True))
    out.append(tally.check)
    return out


def cmd_verify(args) -> int:
    results = _suite(args)
    for c in results:
        print(c.line())
    if args.report:
        rep = Path(args.report)
        rep.mkdir(parents=True, exist_ok=True)
        rows = ["status\tcheck\tchecked\tfailures\tseconds"]
        rows += [f"{'PASS' if c.passed else 'FAIL'}\t{c.name}\t{c.checked}\t{len(c.failures)}\t{c.seconds:.1f}"
                 for c in results]
        (rep / "checks.tsv").write_text("\n".join(rows) + "\n")
        grid = next((c.rows for c in results if c.name == "doublechain component count formula"), None)
        if grid:
            from .render import save_count_grid
            (rep / "components.tsv").write_text(
                "a\tb\tk\tobserved\tformula\n" + "".join("\t".join(map(str, r)) + "\n" for r in grid))
            save_count_grid(grid, rep / "components.svg")
        failures = {c.name: c.failures for c in results if c.failures}
        (rep / "failures.json").write_text(json.dumps(failures, indent=1, sort_keys=True) + "\n")
    return EXIT_OK if all(c.passed for c in results) else EXIT_INVARIANT


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dartflip", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a point-set file")
    g.add_argument("kind", choices=["double-chain", "random", "convex"])
    g.add_argument("params", type=int, nargs="+")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--span", type=int, default=100, help="coordinate range for random sets")
    g.add_argument("-o", "--out")
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("enum", help="count k-DPTs, with histograms by tail set")
    e.add_argument("pointset")
    e.add_argument("-k", type=int, required=True)
    e.add_argument("--write", help="save one enumerated k-DPT (in canonical-key order) to this file")
    e.add_argument("--index", type=int, default=0)
    e.set_defaults(func=cmd_enum)

    gr = sub.add_parser("graph", help="build the flip graph; export JSON or DOT")
    gr.add_argument("pointset")
    gr.add_argument("-k", type=int, required=True)
    gr.add_argument("-o", "--out", help="*.json or *.dot")
    gr.add_argument("--figure", help="SVG bar chart of component sizes")
    gr.set_defaults(func=cmd_graph)

    pr = sub.add_parser("predict", help="predicted 1-DPT components from empty quintuples")
    pr.add_argument("pointset")
    pr.set_defaults(func=cmd_predict)

    c = sub.add_parser("canonicalize", help="flip path from a double-chain k-DPT to its canonical form")
    c.add_argument("kdpt")
    c.add_argument("-o", "--out")
    c.set_defaults(func=cmd_canonicalize)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=["onedart", "doublechain", "structural", "acceptance"])
    v.add_argument("--amax", type=int, default=2)
    v.add_argument("--bmax", type=int, default=2)
    v.add_argument("--count", type=int, default=100, help="random sets / quintuples to sample")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--quick", action="store_true", help="smaller acceptance ranges")
    v.add_argument("--report", help="directory for TSV tables and SVG figures")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="draw a k-DPT file as SVG")
    r.add_argument("kdpt")
    r.add_argument("out")
    r.add_argument("--title")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = parser().parse_args(argv)
    try:
        return args.func(args)
    except (formats.FormatError, GeometryError, DoubleChainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidKDPT as exc:
        print(f"invalid k-DPT: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (FlipInvariantError, StageError, PathError, AssertionError) as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
