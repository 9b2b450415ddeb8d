"""Command-line interface: ``copsrobbers {gen,solve,play,verify,bounds,bench}``.

Exit codes: 0 ok, 1 invariant violated, 2 usage error, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import generators as gen
from .bounds import BoundError, evaluate
from .engine import check_transcript, play
from .formats import (
    FormatError, parse_digraph_arcs, parse_dimacs, parse_graph6, read_graph_file, write_arcs, write_dimacs, write_graph6,
)
from .graph import Digraph, Graph, GraphError, diameter, girth
from .solver import DEFAULT_STATE_BUDGET, SolverBudgetError, cop_number, win_table

EXIT_INVARIANT = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


def _load(args) -> Graph | Digraph:
    if getattr(args, "graph6", None):
        return parse_graph6(args.graph6)
    if getattr(args, "arcs", None):
        return parse_digraph_arcs(args.arcs.replace(";", "\n"), strict=not args.lenient)
    if getattr(args, "dimacs", None):
        return parse_dimacs(args.dimacs, strict=not args.lenient)
    if getattr(args, "input", None):
        return read_graph_file(args.input, strict=not args.lenient)
    if getattr(args, "gen", None):
        fam, params = gen.parse_gen_spec(args.gen)
        return gen.generate(fam, params, args.seed)
    raise UsageError("no graph given (use --graph6, --arcs, --dimacs, --input or --gen)")


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _graph_args(p: argparse.ArgumentParser) -> None:
    src = p.add_argument_group("graph source")
    src.add_argument("--graph6", help="graph6 string")
    src.add_argument("--arcs", help="digraph as 'n;u v;u v' (';' separates lines)")
    src.add_argument("--dimacs", help="DIMACS text ('/' separates lines)")
    src.add_argument("--input", help="graph file (.g6, .dimacs/.col, .arcs)")
    src.add_argument("--gen", help="generator spec, e.g. random-diam2:n=8")
    p.add_argument("--lenient", action="store_true", help="warn instead of failing on duplicate edges")
    p.add_argument("--seed", type=int, default=0)


def cmd_gen(args) -> int:
    fam, params = gen.parse_gen_spec(args.spec)
    g = gen.generate(fam, params, args.seed)
    if isinstance(g, Digraph) or args.format == "arcs":
        if not isinstance(g, Digraph):
            g = Digraph.from_graph(g)
        text = write_arcs(g)
    elif args.format == "dimacs":
        text = write_dimacs(g)
    else:
        text = write_graph6(g) + "\n"
    _emit(text, args.output)
    return 0


def cmd_solve(args) -> int:
    g = _load(args)
    if args.k is None:
        k = cop_number(g, budget=args.budget)
        t = win_table(g, k, budget=args.budget)
        out = {"n": g.n, "cop_number": k}
    else:
        t = win_table(g, args.k, budget=args.budget)
        out = {"n": g.n}
    out.update({"k": t.k, "copwin": t.copwin, "states_visited": t.states})
    if args.timing:
        out["elapsed_ms"] = round(t.elapsed_ms, 3)
    print(json.dumps(out))
    return 0


def _robber(name: str, g, k: int, seed: int, budget: int):
    from .strategies import GreedyDistanceRobber, RandomRobber
    from .solver import OptimalRobber

    if name == "optimal":
        return OptimalRobber(win_table(g, k, budget=budget))
    if name == "random":
        return RandomRobber(seed)
    if name == "greedy-distance":
        return GreedyDistanceRobber()
    raise UsageError(f"unknown robber {name!r}")


def cmd_play(args) -> int:
    from .strategies import TrivialCops

    g = _load(args)
    k = args.k
    if args.strategy == "digraph":
        from .digraph_pursuit import DigraphStrategy

        if not isinstance(g, Digraph):
            g = Digraph.from_graph(g)
        cs = DigraphStrategy(g)
        k = k or cs.cops_needed
    elif args.strategy in ("cover", "girth-guard"):
        if not isinstance(g, Graph):
            raise UsageError("cover strategies need an undirected graph")
        from .cover import CoverStrategy, cover_budget

        cs = CoverStrategy(g, Fraction(args.alpha), seed=args.seed, pairs=True if args.strategy == "girth-guard" else None)
        k = k or cover_budget(g, Fraction(args.alpha), args.slack)
    elif args.strategy == "trivial":
        cs = TrivialCops()
        k = k or g.n
    else:
        raise UsageError(f"unknown strategy {args.strategy!r}")
    rs = _robber(args.robber, g, k, args.seed, args.budget)
    t = play(g, cs, rs, k, args.max_rounds, args.seed)
    _emit(t.to_json(indent=None) + "\n", args.output)
    summary = {"outcome": t.outcome.kind, "round": t.outcome.round, "cops": k}
    print(json.dumps(summary), file=sys.stderr)
    if check_transcript(t):
        return EXIT_INVARIANT
    return EXIT_INVARIANT if t.outcome.kind == "fault" else 0


def cmd_verify(args) -> int:
    from .verify import run_suites

    try:
        checks = run_suites(args.suite or None)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc
    bad = 0
    for c in checks:
        status = "PASS" if c.ok else "FAIL"
        bad += not c.ok
        print(f"{status}  {c.name}" + (f"  ({c.detail})" if c.detail else ""))
    return EXIT_INVARIANT if bad else 0


def cmd_bounds(args) -> int:
    params = {"n": args.n, "d": args.d, "g": args.g, "rho": args.rho}
    names = args.thm or ["1", "2", "5", "6", "7", "9", "11"]
    reports = []
    for name in names:
        try:
            reports.append(evaluate(name, params).to_dict())
        except BoundError as exc:
            if args.thm:
                raise
            reports.append({"name": name, "error": str(exc)})
    if args.table:
        for r in reports:
            if "error" in r:
                print(f"{r['name']:<6} n/a  ({r['error']})")
            else:
                print(f"{r['name']:<6} t={r['exponent']:<8} ~{r['exponent_float']:.4f}  cops={r['cops']}  o(1)={r['asymptotic']}")
    else:
        for r in reports:
            print(json.dumps(r))
    return 0


def _bench_one(job):
    spec, seed, alpha, slack, max_rounds, robber, budget = job
    from .cover import CoverStrategy, cover_budget

    fam, params = gen.parse_gen_spec(spec)
    g = gen.generate(fam, params, seed)
    cs = CoverStrategy(g, Fraction(alpha), seed=seed)
    k = cover_budget(g, Fraction(alpha), slack)
    try:
        rs = _robber(robber, g, k, seed, budget)
    except SolverBudgetError:
        from .strategies import GreedyDistanceRobber

        rs = GreedyDistanceRobber()
    t = play(g, cs, rs, k, max_rounds, seed)
    gi = girth(g)
    return [g.n, diameter(g), "inf" if gi == float("inf") else int(gi), k,
            int(t.outcome.kind == "captured"), t.outcome.round]


def cmd_bench(args) -> int:
    jobs = [(spec, s, args.alpha, args.slack, args.max_rounds, args.robber, args.budget)
            for spec in args.gen for s in range(args.seed, args.seed + args.seeds)]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as ex:
            rows = list(ex.map(_bench_one, jobs))
    else:
        rows = [_bench_one(j) for j in jobs]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "d", "g", "cops_used", "captured", "rounds"])
    w.writerows(rows)
    _emit(buf.getvalue(), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="copsrobbers", description="Cops and robbers: solvers, strategies, bounds.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen", help="generate a graph")
    p.add_argument("spec", help="family[:key=value,...], e.g. petersen or random-diam:n=20,d=3")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["graph6", "dimacs", "arcs"], default="graph6")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="exact cop number / k-cop win")
    _graph_args(p)
    p.add_argument("-k", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET, help="solver state budget (table cells)")
    p.add_argument("--timing", action="store_true", help="include elapsed_ms (non-deterministic)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("play", help="play a strategy against a robber and write the transcript")
    _graph_args(p)
    p.add_argument("--strategy", choices=["cover", "girth-guard", "digraph", "trivial"], required=True)
    p.add_argument("--robber", choices=["optimal", "random", "greedy-distance"], default="optimal")
    p.add_argument("-k", type=int)
    p.add_argument("--alpha", default="2/5")
    p.add_argument("--slack", type=float)
    p.add_argument("--max-rounds", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("suite", nargs="*")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="evaluate closed-form bounds")
    p.add_argument("--thm", action="append")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--rho", type=int)
    p.add_argument("--table", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("bench", help="run the cover strategy over generated graphs, CSV out")
    p.add_argument("--gen", action="append", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--alpha", default="2/5")
    p.add_argument("--slack", type=float)
    p.add_argument("--robber", choices=["optimal", "random", "greedy-distance"], default="greedy-distance")
    p.add_argument("--max-rounds", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        return args.func(args)
    except (SolverBudgetError, MemoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, FormatError, GraphError, BoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
