"""Named property suites, runnable from the command line."""

from __future__ import annotations

import random
from collections import deque
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction

from . import generators as gen
from .bounds import (
    ceil_log2, cor2_exponent, densification_gamma, diam3_conditions, diam4_conditions, thm7_exponent, thm9_exponent,
)
from .cover import GuardAssignment, guard_invariant_holds, guard_move
from .digraph_pursuit import DigraphStrategy
from .engine import check_transcript, play, replay
from .formats import parse_dimacs, parse_graph6, write_dimacs, write_graph6
from .graph import Graph, ball, diameter, girth, rho
from .matching import ReachGraph, check_violator, max_matching
from .solver import cop_number, optimal_robber, solve
from .strategies import GreedyDistanceRobber


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def guard_model_check(g: Graph, u: int) -> tuple[int, int]:
    """Explore every reachable (robber, home, runner) state of the guard pair at ``u``.

    Returns (states, violations). States are taken right after a cops'
    move; play starts with both cops at ``u`` and the robber outside
    ``B(u, 2 rho - 2)``.
    """
    p = int(rho(girth(g)))
    start = set()
    for r in range(g.n):
        if g.dist(u, r) > 2 * p - 2:
            ga, _ = guard_move(g, GuardAssignment(u, p, u, u), r)
            start.add((r, ga.home, ga.runner))
    seen = set(start)
    queue = deque(start)
    bad = 0
    while queue:
        r, h, x = queue.popleft()
        for r2 in g.closed_out(r):
            if r2 in (h, x):
                continue
            ga, _ = guard_move(g, GuardAssignment(u, p, h, x), r2)
            if r2 in ga.positions:
                continue
            if not guard_invariant_holds(g, ga, r2):
                bad += 1
                continue
            s = (r2, ga.home, ga.runner)
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return len(seen), bad


def _graph_suite() -> list[Check]:
    out = [
        Check("petersen girth 5", girth(gen.petersen()) == 5),
        Check("heawood girth 6", girth(gen.heawood()) == 6),
        Check("mcgee girth 7", girth(gen.mcgee()) == 7),
        Check("mcgee diameter 4", diameter(gen.mcgee()) == 4),
    ]
    rng = random.Random(2)
    ok = True
    for _ in range(50):
        g = gen.random_graph_diameter(rng.randint(2, 20), 4, rng)
        ok &= parse_graph6(write_graph6(g)) == g and parse_dimacs(write_dimacs(g)) == g
        A = rng.sample(range(g.n), min(2, g.n))
        ok &= all(ball(g, A, i) <= ball(g, A, i + 1) for i in range(4))
    out.append(Check("graph6/DIMACS round trips and ball monotonicity", bool(ok)))
    return out


def _matching_suite() -> list[Check]:
    rng = random.Random(1)
    ok = True
    for _ in range(200):
        nl, nr = rng.randint(1, 6), rng.randint(1, 6)
        edges = [(i, 100 + j) for i in range(nl) for j in range(nr) if rng.random() < 0.3]
        h = ReachGraph.from_edges(list(range(nl)), [100 + j for j in range(nr)], edges)
        m = max_matching(h)
        if not m.left_perfect:
            try:
                check_violator(h, m, m.violator)
            except AssertionError:
                ok = False
    return [Check("hall violators on 200 random bipartite graphs", bool(ok))]


def _solver_suite() -> list[Check]:
    return [
        Check("c(C5) = 2", cop_number(gen.cycle(5)) == 2),
        Check("c(Petersen) = 3", cop_number(gen.petersen()) == 3),
        Check("c(P4) = 1", cop_number(gen.path(4)) == 1),
        Check("win table is a fixed point (Petersen, k=3)", solve(gen.petersen(), 3).is_fixed_point()),
        Check("c(directed 3-cycle) = 2", cop_number(gen.directed_cycle(3)) == 2),
    ]


def _engine_suite() -> list[Check]:
    from .strategies import TrivialCops

    g = gen.petersen()
    t = play(g, TrivialCops(), optimal_robber(g, 3), 3, max_rounds=50)
    r = replay(t)
    return [
        Check("transcript legal", not check_transcript(t)),
        Check("replay reproduces outcome", r.outcome == t.outcome),
    ]


def _cover_suite() -> list[Check]:
    from .cover import run_full_strategy

    out = []
    rng = random.Random(6)
    bad = 0
    for s in range(10):
        g = gen.random_graph_diameter(rng.randint(14, 24), 4, rng)
        t = run_full_strategy(g, 0.4, s, k=12, max_rounds=80, robber=GreedyDistanceRobber(), imaginary=False)
        bad += t.outcome.kind == "fault" or bool(check_transcript(t))
        for p in t.stages["plans"]:
            if p["pin"] and not (t.outcome.captured and t.outcome.round <= p["round"] + 2 * p["pin_radius"]):
                bad += 1
            for rec in p["stages"]:
                if rec["violator"] is not None:
                    bad += len(rec["violator"]) <= rec["violator_neighborhood"]
                    if rec["stage"] >= 1:
                        bad += not set(rec["violator"]) <= ball(g, rec["source"], rec["radius"])
    out.append(Check("escalation pins, violators and chain containment (10 games)", bad == 0, f"{bad} violations"))
    for name, g in (("mcgee", gen.mcgee()), ("heawood", gen.heawood())):
        bad = sum(guard_model_check(g, u)[1] for u in range(g.n))
        out.append(Check(f"guard invariant exhaustive on {name}", bad == 0, f"{bad} violations"))
    return out


def _digraph_suite() -> list[Check]:
    fails = 0
    for s in range(30):
        d = gen.random_diam2_digraph(random.Random(s).randint(3, 10), random.Random(s))
        st = DigraphStrategy(d)
        t = play(d, st, optimal_robber(d, st.cops_needed), st.cops_needed, seed=s)
        fails += t.outcome.kind != "captured"
    return [Check("digraph strategy beats optimal robber (30 digraphs)", fails == 0, f"{fails} failures")]


def _bounds_suite() -> list[Check]:
    return [
        Check("ceil log2 exact", [ceil_log2(x) for x in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]),
        Check("diameter-4 exponent 3/5", thm7_exponent(4) == Fraction(3, 5)),
        Check("sharper diameter exponent never worse, d <= 10^4", all(thm7_exponent(d) <= cor2_exponent(d) for d in range(2, 10**4))),
        Check("girth exponent at rho=1 equals diameter exponent, d <= 10^4", all(
            thm9_exponent(d, 1) == thm7_exponent(d) for d in range(2, 10**4))),
        Check("conditions at alpha=2/5 and alpha=3/7", diam4_conditions(Fraction(2, 5), Fraction(1, 5))
              and diam3_conditions(Fraction(3, 7), Fraction(1, 7))),
        Check("gamma schedule increasing", all(
            densification_gamma(0.25, i) < densification_gamma(0.25, i + 1) for i in range(1, 6))),
    ]


SUITES: dict[str, Callable[[], list[Check]]] = {
    "graph": _graph_suite,
    "matching": _matching_suite,
    "solver": _solver_suite,
    "engine": _engine_suite,
    "cover": _cover_suite,
    "digraph": _digraph_suite,
    "bounds": _bounds_suite,
}


def run_suites(names: list[str] | None = None) -> list[Check]:
    out: list[Check] = []
    for name in names or list(SUITES):
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
        for c in SUITES[name]():
            c.name = f"{name}: {c.name}"
            out.append(c)
    return out


__all__ = ["Check", "SUITES", "guard_model_check", "run_suites"]
