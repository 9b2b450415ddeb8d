import json

from copsrobbers import generators as gen
from copsrobbers.engine import (
    GameState, ScriptedCops, ScriptedRobber, Transcript, check_transcript, default_max_rounds, play, replay,
    validate_move,
)
from copsrobbers.solver import optimal_robber
from copsrobbers.strategies import GreedyDistanceRobber, RandomRobber, TrivialCops


class Frozen:
    def place(self, g, k, rng):
        return [0] * k

    def move(self, g, state):
        return list(state.cops)


class Teleport(Frozen):
    def move(self, g, state):
        return [(c + 2) % g.n for c in state.cops]


class Crash(Frozen):
    def move(self, g, state):
        raise RuntimeError("boom")


def test_capture_at_placement():
    g = gen.cycle(4)
    t = play(g, TrivialCops(), RandomRobber(), 4)
    assert t.outcome.captured and t.outcome.round == 0


def test_single_vertex():
    g = gen.path(1)
    t = play(g, Frozen(), GreedyDistanceRobber(), 1)
    assert t.outcome.captured and t.outcome.round == 0


def test_survival_and_round_limit():
    g = gen.cycle(6)
    t = play(g, Frozen(), optimal_robber(g, 1), 1, max_rounds=10)
    assert t.outcome.kind == "survived" and len(t.rounds) == 10
    assert default_max_rounds(6, 1) == 4 * 36 * 2


def test_illegal_cop_move_is_a_fault():
    g = gen.cycle(8)
    t = play(g, Teleport(), ScriptedRobber([4, 4, 4]), 1)
    assert t.outcome.kind == "fault" and t.outcome.side == "cops"


def test_strategy_exception_is_a_fault():
    t = play(gen.cycle(5), Crash(), RandomRobber(), 1)
    assert t.outcome.kind == "fault" and "boom" in t.outcome.detail


def test_illegal_robber_move():
    g = gen.path(5)
    t = play(g, Frozen(), ScriptedRobber([4, 2]), 1)
    assert t.outcome.kind == "fault" and t.outcome.side == "robber"


def test_robber_walking_into_cop_is_captured():
    g = gen.path(3)
    t = play(g, Frozen(), ScriptedRobber([2, 1, 0]), 1)
    assert t.outcome.captured and t.outcome.round == 2


def test_validate_move_is_multiset_matching():
    g = gen.path(4)
    assert validate_move([0, 0], [0, 1], g)
    assert not validate_move([0, 0], [1, 2], g)
    assert validate_move([0, 2], [1, 1], g)


def test_directed_moves_follow_arcs():
    d = gen.directed_cycle(3)
    assert validate_move([0], [1], d) and not validate_move([1], [0], d)


def test_transcript_json_roundtrip_and_replay():
    g = gen.petersen()
    t = play(g, TrivialCops(), optimal_robber(g, 2), 2, max_rounds=30, seed=3)
    s = t.to_json()
    keys = list(json.loads(s))
    assert keys[:8] == ["graph", "directed", "k", "seed", "max_rounds", "placement", "rounds", "outcome"]
    t2 = Transcript.from_dict(json.loads(s))
    assert t2.to_json() == s
    r = replay(t2)
    assert r.outcome == t.outcome and r.rounds == t.rounds
    assert not check_transcript(t)


def test_check_transcript_flags_tampering():
    g = gen.cycle(6)
    t = play(g, Frozen(), ScriptedRobber([3, 3, 3]), 1, max_rounds=2)
    t.rounds[1]["robber"] = 0
    assert check_transcript(t)


def test_scripted_cops_replay():
    g = gen.path(3)
    t = play(g, ScriptedCops([[0], [1], [2]]), ScriptedRobber([2, 2, 2]), 1)
    assert t.outcome.captured and t.outcome.round == 2
    assert t.rounds[-1] == {"cops": [2], "robber": None}


def test_game_state_requires_sorted_cops():
    import pytest

    with pytest.raises(ValueError):
        GameState((2, 1), 0, "cops", 1)
