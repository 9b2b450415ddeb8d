import random
from fractions import Fraction

import pytest

from copsrobbers import generators as gen
from copsrobbers.cover import (
    CoverSet, CoverStrategy, EscalationState, GuardAssignment, PreconditionError, ScheduleExhausted, Team,
    check_cover_pair, densify, diam3_endgame, escalation_round, flush, guard_invariant_holds, guard_move,
    run_full_strategy, sample_cover_set, verify_cover_property,
)
from copsrobbers.engine import check_transcript, play
from copsrobbers.graph import Graph, ball, shortest_path_step
from copsrobbers.solver import optimal_robber
from copsrobbers.strategies import GreedyDistanceRobber, RandomRobber
from copsrobbers.verify import guard_model_check

from conftest import random_graph


# cover sets


def test_full_probability_gives_all_vertices():
    g = gen.petersen()
    assert sample_cover_set(g, 1.0, 0).vertices == frozenset(range(10))


def test_size_concentration_and_bound():
    g = Graph(1000, [[] for _ in range(1000)])
    for seed in range(100):
        c = sample_cover_set(g, 0.5, seed)
        assert 400 <= len(c) <= 600
        assert len(c) <= 2 * 1000 * 0.5


def test_nested_sampling():
    g = gen.mcgee()
    I = sample_cover_set(g, 0.5, 1)
    R = sample_cover_set(g, 0.3, 2, within=I.vertices)
    assert R.vertices <= I.vertices
    assert len(R) <= 2 * len(I) * 0.3


def test_sampling_is_seeded():
    g = gen.mcgee()
    assert sample_cover_set(g, 0.4, 9).vertices == sample_cover_set(g, 0.4, 9).vertices


def test_bad_probability():
    with pytest.raises(ValueError):
        sample_cover_set(gen.petersen(), 0.0, 0)


def test_verifier_trivial_cases():
    g = gen.petersen()
    full = CoverSet(frozenset(range(10)), 1.0, 10)
    rep = verify_cover_property(g, full, 10, 0, slack=0.01)
    assert rep.passed and rep.exhaustive and rep.qualifying > 0
    assert check_cover_pair(g, frozenset(), [], 3, 0.5) is True
    empty = CoverSet(frozenset(), 0.05, 10)
    rep = verify_cover_property(g, empty, 10, 0, slack=0.001)
    assert not rep.passed and rep.counterexamples


def test_verifier_sampled_mode():
    rng = random.Random(0)
    g = random_graph(40, 0.1, rng)
    c = sample_cover_set(g, 1.0, 0)
    rep = verify_cover_property(g, c, 50, 1, slack=0.05)
    assert not rep.exhaustive and rep.trials == 50 and rep.passed


# escalation


def test_all_vertices_copped_gives_immediate_pin():
    rng = random.Random(1)
    g = gen.random_graph_diameter(30, 4, rng)
    team = Team("cover", list(range(g.n)))
    for r in range(g.n):
        st = EscalationState(Fraction(2, 5))
        plan = escalation_round(g, st, r, [team], list(range(g.n)))
        assert plan.pin and plan.perfect_stage == 0 and plan.horizon == 2


def test_violator_becomes_confinement():
    # Star K_{1,3} with the robber at the centre and one cop far away on a path.
    g = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)])
    st = EscalationState(Fraction(2, 5), stages=1)
    plan = escalation_round(g, st, 0, [Team("c", [0]), Team("s", [])], [5])
    rec = plan.records[0]
    # The cop at 5 can guard 3 but nothing else in B(0, 1).
    assert not rec.perfect and rec.violator == {0, 1, 2}
    assert rec.violator_neighborhood == 0
    assert plan.assignments == {0: (3, "guard")}
    assert st.confinement[0] == {0, 1, 2}
    assert plan.records[1].source == {0, 1, 2}


def test_densify_schedule():
    st = EscalationState(Fraction(2, 5), schedule=2)
    assert st.gamma == 0
    densify(st)
    assert st.gamma == Fraction(1, 10)
    densify(st)
    assert st.gamma == Fraction(3, 20)
    with pytest.raises(ScheduleExhausted):
        densify(st)


# endgame


class EndgameCops:
    """All cops start on one vertex and run the diameter-3 endgame."""

    def place(self, g, k, rng):
        self.pos = [0] * k
        return self.pos

    def move(self, g, state):
        r = state.robber
        for i, c in enumerate(self.pos):
            if c == r or r in g.neighbors(c):
                self.pos[i] = r
                return self.pos
        if not hasattr(self, "plan"):
            self.plan = diam3_endgame(g, r, len(self.pos), self.pos)
        for i, t in self.plan.assignment.items():
            if g.dist(self.pos[i], t) > 1:
                self.pos[i] = shortest_path_step(g, self.pos[i], t)
        return self.pos


def test_petersen_endgame_captures_fast():
    g = gen.petersen()
    for robber in (optimal_robber(g, 10), GreedyDistanceRobber(), RandomRobber(3)):
        t = play(g, EndgameCops(), robber, 10)
        assert t.outcome.captured and t.outcome.round <= 4


def test_endgame_errors_and_degenerate():
    g = gen.petersen()
    with pytest.raises(ValueError):
        diam3_endgame(g, 0, 0)
    single = Graph(1, [[]])
    assert diam3_endgame(single, 0, 1).targets == (0,)


# guard pairs


def test_guard_invariant_exhaustive():
    for g in (gen.mcgee(), gen.heawood()):
        for u in range(g.n):
            states, bad = guard_model_check(g, u)
            assert bad == 0 and states > 0


def test_rho_one_cop_stays_put():
    g = gen.heawood()
    ga = GuardAssignment(0, 1, 0, 0)
    r = next(v for v in range(g.n) if g.dist(0, v) == 2)
    ga2, pos = guard_move(g, ga, r)
    assert pos == (0, 0)
    nb = g.neighbors(0)[0]
    assert nb in guard_move(g, ga, nb)[1]


def test_guard_random_walks_mcgee():
    g = gen.mcgee()
    rng = random.Random(2)
    u = 0
    for _ in range(500):
        r = rng.choice([v for v in range(g.n) if g.dist(u, v) >= 3])
        ga, _ = guard_move(g, GuardAssignment(u, 2, u, u), r)
        for _ in range(30):
            r = rng.choice([r, *g.neighbors(r)])
            if r in ga.positions:
                break
            ga, _ = guard_move(g, ga, r)
            if r in ga.positions:
                break
            assert g.dist(u, r) > 2 and guard_invariant_holds(g, ga, r)


def test_runner_retreats_when_robber_does():
    g = gen.mcgee()
    u = 0
    r = next(v for v in range(g.n) if g.dist(u, v) == 3 and any(g.dist(u, w) == 4 for w in g.neighbors(v)))
    ga, _ = guard_move(g, GuardAssignment(u, 2, u, u), r)
    assert g.dist(u, ga.runner) == 1
    out = next(w for w in g.neighbors(r) if g.dist(u, w) == 4)
    ga, _ = guard_move(g, ga, out)
    assert ga.runner == u and ga.home == u


def test_guard_needs_flush_first():
    g = gen.mcgee()
    r = next(v for v in range(g.n) if g.dist(0, v) == 2)
    with pytest.raises(PreconditionError):
        guard_move(g, GuardAssignment(0, 2, 0, 0), r)


def test_flush():
    g = gen.mcgee()
    far = next(v for v in range(g.n) if g.dist(0, v) == 3)
    assert flush(g, 0, 2, 5, far).steps == 0
    r = next(v for v in range(g.n) if g.dist(0, v) == 2)
    res = flush(g, 0, 2, r, 0)
    assert res.captured or g.dist(0, res.trajectory[-1][1]) >= 3
    assert res.steps <= 2 * 2 * g.n
    # Robber standing on u with the chaser adjacent.
    res = flush(g, 0, 2, g.neighbors(0)[0], 0)
    assert res.captured and res.steps == 1


# full strategy


def test_disconnected_input_rejected():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(PreconditionError):
        run_full_strategy(g)


def test_budget_n_is_immediate():
    rng = random.Random(4)
    for _ in range(10):
        g = random_graph(rng.randint(2, 20), 0.3, rng)
        t = run_full_strategy(g, 0.4, 0, k=g.n, robber=GreedyDistanceRobber())
        assert t.outcome.captured and t.outcome.round == 0


def test_petersen_generous_slack():
    g = gen.petersen()
    t = run_full_strategy(g, Fraction(2, 5), 0, slack=10.0)
    assert t.outcome.captured
    assert t.stages["bound"]["name"] == "thm6"


def pin_and_chain_violations(t, g):
    bad = []
    for p in t.stages.get("plans", []):
        if p["pin"]:
            deadline = p["round"] + 2 * p["pin_radius"]
            if not (t.outcome.captured and t.outcome.round <= deadline):
                bad.append(("pin", p["round"]))
        for rec in p["stages"]:
            if rec["stage"] >= 1:
                S = rec["source"]
                if rec["violator"] is not None and not set(rec["violator"]) <= ball(g, S, rec["radius"]):
                    bad.append(("chain", p["round"]))
            if rec["violator"] is not None and len(rec["violator"]) <= rec["violator_neighborhood"]:
                bad.append(("hall", p["round"]))
    return bad


def test_escalation_invariants_vs_optimal_robber():
    rng = random.Random(5)
    for s in range(25):
        n = rng.randint(6, 11)
        g = gen.random_graph_diameter(n, rng.choice([2, 3, 4]), rng)
        for k in (2, 3):
            t = run_full_strategy(g, 0.4, s, k=k, max_rounds=60)
            assert t.outcome.kind != "fault", t.outcome
            assert not check_transcript(t)
            assert pin_and_chain_violations(t, g) == []


def test_escalation_invariants_with_real_teams():
    rng = random.Random(5)
    pins = chains = 0
    for s in range(30):
        g = gen.random_graph_diameter(rng.randint(14, 30), rng.choice([3, 4, 5, 6]), rng)
        for k in (6, 12, 20):
            for imaginary in (True, False):
                t = run_full_strategy(g, 0.4, s, k=k, max_rounds=100, robber=GreedyDistanceRobber(),
                                      imaginary=imaginary)
                assert t.outcome.kind != "fault" and not check_transcript(t)
                assert pin_and_chain_violations(t, g) == []
                for p in t.stages["plans"]:
                    pins += p["pin"]
                    chains += sum(r["stage"] >= 1 and r["violator"] is not None for r in p["stages"])
    # The checks above must not be vacuous.
    assert pins > 0 and chains > 0


def test_girth_mode_uses_pairs():
    g = gen.mcgee()
    st = CoverStrategy(g, 0.4, seed=1)
    assert st.pairs and st.rho == 2
    t = play(g, st, GreedyDistanceRobber(), 16, max_rounds=200)
    assert t.outcome.kind != "fault"
    assert t.stages["teams"]["cover"] % 2 == 0
