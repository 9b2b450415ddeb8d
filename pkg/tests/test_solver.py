import itertools
import random
from functools import lru_cache

import pytest

from copsrobbers import generators as gen
from copsrobbers.engine import check_transcript, play
from copsrobbers.solver import (
    OptimalCops, SolverBudgetError, SolverState, cop_number, cop_win, multiset_count, multiset_index,
    multiset_unrank, optimal_robber, restricted_cop_number, solve,
)

from conftest import random_graph


def oracle_cop_win(g, k, arena=None):
    """Plain game-tree search: cops win iff they force capture within |states| cop moves."""
    n = g.n
    verts = range(n) if arena is None else sorted(arena)
    moves = [tuple(sorted({v, *g.out_neighbors(v)})) for v in range(n)]
    robber_moves = [tuple(w for w in moves[v] if arena is None or w in arena) for v in range(n)]
    horizon = multiset_count(n, k) * n + 1

    @lru_cache(maxsize=None)
    def cops_win(cops, r, t):
        # cops to move; capture within t cop moves
        if r in cops:
            return True
        if t == 0:
            return False
        for nxt in set(tuple(sorted(p)) for p in itertools.product(*(moves[c] for c in cops))):
            if r in nxt:
                return True
            if all(w in nxt or cops_win(nxt, w, t - 1) for w in robber_moves[r]):
                return True
        return False

    for place in itertools.combinations_with_replacement(range(n), k):
        if all(cops_win(place, r, horizon) for r in verts):
            return True
    return False


def test_multiset_rank_roundtrip():
    for n, k in [(1, 1), (4, 2), (6, 3), (5, 4)]:
        seen = set()
        for c in itertools.combinations_with_replacement(range(n), k):
            i = multiset_index(c, n)
            assert multiset_unrank(i, n, k) == c
            seen.add(i)
        assert seen == set(range(multiset_count(n, k)))
    s = SolverState((0, 1), 2, True)
    assert s.index(4) != SolverState((0, 1), 2, False).index(4)


def test_examples():
    assert cop_win(gen.path(2), 1)
    assert not cop_win(gen.cycle(4), 1) and cop_win(gen.cycle(4), 2)
    assert not cop_win(gen.petersen(), 2) and cop_win(gen.petersen(), 3)
    assert cop_number(gen.cycle(5)) == 2
    assert cop_number(gen.directed_cycle(3)) == 2


def test_against_game_tree_oracle():
    rng = random.Random(8)
    cases = [gen.cycle(4), gen.cycle(5), gen.path(4), gen.directed_cycle(3), gen.directed_cycle(4)]
    cases += [random_graph(rng.randint(3, 6), 0.4, rng) for _ in range(12)]
    cases += [gen.random_diam2_digraph(rng.randint(3, 5), rng) for _ in range(6)]
    for g in cases:
        for k in (1, 2):
            assert cop_win(g, k) == oracle_cop_win(g, k), (g, k)


def test_restricted_against_oracle():
    d = gen.directed_cycle(3)
    assert restricted_cop_number(d, [0]) == 1
    assert restricted_cop_number(d, [0, 1]) == 1
    assert restricted_cop_number(d, range(3)) == 2
    rng = random.Random(4)
    for _ in range(8):
        d = gen.random_diam2_digraph(rng.randint(4, 6), rng)
        H = rng.sample(range(d.n), rng.randint(1, d.n))
        c = restricted_cop_number(d, H)
        assert oracle_cop_win(d, c, frozenset(H))
        assert c == 1 or not oracle_cop_win(d, c - 1, frozenset(H))


def test_table_is_fixed_point_and_ranks():
    t = solve(gen.petersen(), 3)
    assert t.is_fixed_point()
    # Rank 0 states are exactly the co-location states.
    zero = t.cop_rank == 0
    for idx in zip(*zero.nonzero()):
        assert idx[-1] in idx[:-1]


def test_budget_error():
    with pytest.raises(SolverBudgetError):
        solve(gen.petersen(), 3, budget=100)


def test_trivial_when_k_covers_graph():
    t = solve(gen.cycle(4), 4)
    assert t.trivial and t.copwin


def test_optimal_play_both_sides():
    g = gen.petersen()
    tr = play(g, OptimalCops(solve(g, 3)), optimal_robber(g, 3), 3)
    assert tr.outcome.captured and not check_transcript(tr)
    t2 = solve(g, 2)
    tr = play(g, OptimalCops(t2), optimal_robber(g, 2), 2, max_rounds=40)
    assert tr.outcome.kind == "survived"


def test_optimal_robber_delays_capture():
    g = gen.path(5)
    t = solve(g, 1)
    tr = play(g, OptimalCops(t), optimal_robber(g, 1), 1)
    assert tr.outcome.captured
    worst = max(t.cop_to_move_rank(list(t.placement), r) for r in range(g.n))
    assert tr.outcome.round == worst
