import math
import random

import pytest

from copsrobbers import generators as gen
from copsrobbers.digraph_pursuit import (
    DigraphStrategy, PreconditionError, decompose, endgame_moves, induction_step_holds, residual_out_degree,
)
from copsrobbers.engine import check_transcript, play
from copsrobbers.graph import Digraph
from copsrobbers.solver import optimal_robber


def test_induction_inequality():
    assert all(induction_step_holds(m) for m in range(3, 10**5))


def test_decomposition_invariants():
    rng = random.Random(0)
    for _ in range(100):
        d = gen.random_diam2_digraph(rng.randint(3, 30), rng)
        dec = decompose(d)
        covered = set(dec.residual)
        for s in dec.steps:
            assert s.out_degree >= s.threshold == math.isqrt(2 * s.residual_order)
            covered |= set(s.removed)
        assert covered == set(range(d.n))
        m = len(dec.residual)
        if m:
            assert dec.max_residual_out_degree < math.isqrt(2 * m)
            assert all(residual_out_degree(d, dec.residual, v) <= dec.max_residual_out_degree for v in dec.residual)
        assert dec.cops <= math.isqrt(2 * d.n)


def test_tiny_digraphs():
    for n in (1, 2):
        d = gen.bidirected_complete(n)
        st = DigraphStrategy(d)
        t = play(d, st, optimal_robber(d, st.cops_needed), st.cops_needed)
        assert t.outcome.captured


def test_directed_cycle_precondition():
    with pytest.raises(PreconditionError):
        DigraphStrategy(gen.directed_cycle(5))
    with pytest.raises(PreconditionError):
        DigraphStrategy(Digraph.from_arcs(3, [(0, 1), (1, 2)]))


def test_endgame_rejects_too_many_exits():
    d = gen.bidirected_complete(4)
    with pytest.raises(PreconditionError):
        endgame_moves(d, frozenset(range(4)), [0], 0, 1)


@pytest.mark.parametrize("maker", [gen.random_diam2_digraph, gen.random_bipartite_diam3_digraph])
def test_strategy_beats_optimal_robber(maker):
    rng = random.Random(11)
    for s in range(40):
        d = maker(rng.randint(4, 11), rng)
        st = DigraphStrategy(d)
        k = st.cops_needed
        assert k <= math.isqrt(2 * d.n)
        t = play(d, st, optimal_robber(d, k), k, seed=s)
        assert t.outcome.captured, t.outcome
        assert not check_transcript(t)
        assert t.stages["decomposition"]["cops"] == k
