"""``raag-lab`` command line entry point."""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import bb, geometry, graph, manifold, oracles, words
from .bb import LOWER_BOUND, NotAMember
from .graph import GraphError
from .words import BudgetExceeded, WordError

EXIT_OK, EXIT_DOMAIN, EXIT_BUDGET = 0, 1, 2


def _rows_to_text(rows: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


class _Out:
    def __init__(self, path):
        self.path = path
        self.chunks = []

    def write(self, text: str):
        self.chunks.append(text)

    def line(self, text=""):
        self.chunks.append(f"{text}\n")

    def flush(self):
        text = "".join(self.chunks)
        if self.path in (None, "-"):
            sys.stdout.write(text)
        else:
            Path(self.path).write_text(text)


def _load(args):
    if not args.graph:
        raise GraphError("--graph is required")
    return graph.load_graph(Path(args.graph).read_text())


def _word(g, args):
    if args.word is None:
        raise WordError("--word is required")
    return words.normalize(g, words.parse_word(g, args.word))


def _rho(text: str) -> Fraction:
    rho = Fraction(text)
    if not (0 < rho <= 1):
        raise ValueError("rho must lie in (0, 1]")
    return rho


def _status_code(rows) -> int:
    return EXIT_BUDGET if any(r.get("status") == LOWER_BOUND for r in rows) else EXIT_OK


def cmd_validate(args, out):
    g = _load(args)
    info = {
        "vertices": list(g.vertices),
        "edges": [list(e) for e in g.sorted_edges()],
        "connected": graph.is_connected(g),
        "tree": graph.is_tree(g),
    }
    if info["connected"]:
        info["diameter"] = graph.diameter(g)
    j = graph.join_decomposition(g)
    info["join"] = None if j is None else {
        "left": sorted(j.left, key=g.index),
        "right": sorted(j.right, key=g.index),
    }
    out.line(json.dumps(info))
    return EXIT_OK


def cmd_nf(args, out):
    g = _load(args)
    out.line(str(_word(g, args)))
    return EXIT_OK


def cmd_len(args, out):
    g = _load(args)
    out.line(str(words.geodesic_length(_word(g, args))))
    return EXIT_OK


def cmd_phi(args, out):
    g = _load(args)
    out.line(str(words.phi(_word(g, args))))
    return EXIT_OK


def cmd_cyclic(args, out):
    g = _load(args)
    split = words.cyclic_reduce(_word(g, args))
    out.line(f"conjugator: {split.conjugator}")
    out.line(f"core: {split.core}")
    return EXIT_OK


def cmd_rewrite(args, out):
    g = _load(args)
    if args.kind == "pair":
        if args.a is None or args.b is None or args.m is None:
            raise WordError("rewrite pair needs --a, --b and --m")
        w = bb.rewrite_pair(g, args.a, args.b, args.m)
    elif args.kind == "general":
        w = bb.rewrite_general(_word(g, args))
    else:
        if args.left:
            left = frozenset(args.left.split(","))
            j = graph.JoinDecomposition(left, frozenset(g.vertices) - left)
        else:
            j = graph.join_decomposition(g)
            if j is None:
                raise GraphError("graph is not a join")
        w = bb.rewrite_join(_word(g, args), j)
    out.line(str(w))
    return EXIT_OK


def cmd_tlen(args, out):
    g = _load(args)
    value, status = bb.t_length(_word(g, args), budget=args.budget)
    out.line(f"{value} {status}")
    return EXIT_BUDGET if status == LOWER_BOUND else EXIT_OK


def cmd_distortion(args, out):
    g = _load(args)
    try:
        records = geometry.distortion_table(g, args.rmax, budget=args.budget)
    except BudgetExceeded as exc:
        out.write(_rows_to_text([r.row() for r in exc.partial or []], args.format))
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    rows = [r.row() for r in records]
    out.write(_rows_to_text(rows, args.format))
    return _status_code(rows)


def cmd_divergence(args, out):
    g = _load(args)
    rho = _rho(args.rho)
    radii = [args.r] if args.r else range(1, args.rmax + 1)
    rows = []
    for r in radii:
        try:
            rows.append(geometry.relative_divergence(g, rho, args.n, r, budget=args.budget).row())
        except BudgetExceeded as exc:
            if exc.partial is not None:
                rows.append(exc.partial.row())
            out.write(_rows_to_text(rows, args.format))
            print(f"budget exhausted: {exc}", file=sys.stderr)
            return EXIT_BUDGET
    out.write(_rows_to_text(rows, args.format))
    return _status_code(rows)


def cmd_geodiv(args, out):
    g = _load(args)
    if args.period:
        period = words.normalize(g, args.period)
    else:
        period = geometry.witness_pair(g, 1)[2]
    rows = [geometry.geodesic_divergence(g, period, r, budget=args.budget).row() for r in range(1, args.rmax + 1)]
    out.write(_rows_to_text(rows, args.format))
    return _status_code(rows)


def cmd_witness(args, out):
    g = _load(args)
    x, y, h, t = geometry.witness_pair(g, args.r)
    out.line(json.dumps({"x": str(x), "y": str(y), "h": str(h), "t": str(t)}))
    return EXIT_OK


def cmd_manifold(args, out):
    g = _load(args)
    md = manifold.build_manifold(g)
    out.line(md.to_json())
    return EXIT_OK


def _selftest_checks():
    rng = random.Random(0)
    suite = {
        "edge": graph.path_graph(2),
        "P3": graph.path_graph(3),
        "P4": graph.path_graph(4),
        "K13": graph.star_graph(3),
        "C4+chord": graph.SimplicialGraph.from_edges(
            "abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")]
        ),
    }

    def normal_forms():
        for g in suite.values():
            letters = [(v, s) for v in g.vertices for s in (1, -1)]
            for _ in range(40):
                w = [rng.choice(letters) for _ in range(rng.randint(0, 6))]
                nf = words.normalize(g, [words.Letter(v, s) for v, s in w])
                if tuple((l.vertex, l.sign) for l in nf.letters) != oracles.brute_normal_form(g, w):
                    return False
        return True

    def geodesic_lengths():
        for g in suite.values():
            ball = oracles.cayley_ball(g, 4)
            if words.enumerate_ball(g, 4) != len(ball):
                return False
            for d, w in ball.values():
                if words.normalize(g, [words.Letter(v, s) for v, s in w]).length != d:
                    return False
        return True

    def rewriters():
        for g in suite.values():
            m = bb.bb_tables(g).diameter
            for h in words.iter_ball(g, 6):
                if h.height:
                    continue
                w = bb.rewrite_general(h)
                if bb.eval_t_word(w) != h or len(w) > m * h.length ** 2:
                    return False
        return True

    def manifolds():
        for name in ("P3", "P4", "K13"):
            md = manifold.build_manifold(suite[name])
            g = suite[name]
            if manifold.surface_euler(md) != 1 - len(g.edges):
                return False
            if not all(e["pass"] for e in manifold.check_gluing_compatibility(md)):
                return False
        return True

    return [
        ("normal form = brute-force shuffle minimum", normal_forms),
        ("geodesic length = Cayley BFS distance", geodesic_lengths),
        ("rewrite_general round trip and bound", rewriters),
        ("manifold invariants", manifolds),
    ]


def cmd_selftest(args, out):
    ok = True
    for name, check in _selftest_checks():
        passed = check()
        ok &= passed
        out.line(f"{'PASS' if passed else 'FAIL'} {name}")
    return EXIT_OK if ok else EXIT_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="raag-lab", description="Right-angled Artin group experiments")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="graph JSON file")
    common.add_argument("--budget", type=int, default=bb.DEFAULT_NODE_BUDGET, help="node budget for searches")
    common.add_argument("--output", "-o", default="-", help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate)
    for name, func in (("nf", cmd_nf), ("len", cmd_len), ("phi", cmd_phi), ("cyclic", cmd_cyclic), ("tlen", cmd_tlen)):
        add(name, func).add_argument("--word")
    sp = add("rewrite", cmd_rewrite)
    sp.add_argument("kind", choices=("pair", "general", "join"))
    sp.add_argument("--word")
    sp.add_argument("--a")
    sp.add_argument("--b")
    sp.add_argument("--m", type=int)
    sp.add_argument("--left", help="comma-separated left side of the join")
    add("distortion", cmd_distortion).add_argument("--rmax", type=int, default=8)
    sp = add("divergence", cmd_divergence)
    sp.add_argument("--rho", default="1")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--rmax", type=int, default=2)
    sp.add_argument("--r", type=int)
    sp = add("geo-div", cmd_geodiv)
    sp.add_argument("--period", help="cyclically reduced period (default: the witness h)")
    sp.add_argument("--rmax", type=int, default=3)
    add("witness", cmd_witness).add_argument("--r", type=int, default=1)
    add("manifold", cmd_manifold)
    add("selftest", cmd_selftest)
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget <= 0:
        print("error: --budget must be positive", file=sys.stderr)
        return EXIT_DOMAIN
    if getattr(args, "n", 2) < 2:
        print("error: --n must be at least 2", file=sys.stderr)
        return EXIT_DOMAIN
    out = _Out(args.output)
    try:
        code = args.func(args, out)
    except (GraphError, WordError, NotAMember, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    out.flush()
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
