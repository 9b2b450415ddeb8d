import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from copsrobbers import generators as gen
from copsrobbers.matching import (
    ReachGraph, build_reach_graph, check_violator, hall_violator, hopcroft_karp, max_matching,
)


def brute_matching(h: ReachGraph) -> int:
    """Largest matching by trying every option for each left vertex in turn."""
    best = 0

    def go(i, used, size):
        nonlocal best
        if size + (len(h.left) - i) <= best:
            return
        if i == len(h.left):
            best = max(best, size)
            return
        for j in h.adj[i]:
            if j not in used:
                go(i + 1, used | {j}, size + 1)
        go(i + 1, used, size)

    go(0, frozenset(), 0)
    return best


def max_deficiency(h: ReachGraph) -> int:
    best = 0
    for r in range(len(h.left) + 1):
        for S in itertools.combinations(h.left, r):
            best = max(best, len(S) - len(h.neighborhood(S)))
    return best


def random_reach_graph(rng: random.Random, total: int = 12) -> ReachGraph:
    nl = rng.randint(0, total)
    nr = rng.randint(0, total - nl)
    p = rng.random()
    left = [f"l{i}" for i in range(nl)]
    right = [f"r{j}" for j in range(nr)]
    edges = [(a, b) for a in left for b in right if rng.random() < p]
    return ReachGraph.from_edges(left, right, edges)


@settings(max_examples=300, deadline=None)
@given(st.randoms(use_true_random=False))
def test_matching_is_maximum_and_violator_sound(r):
    h = random_reach_graph(r)
    m = max_matching(h)
    assert m.size == brute_matching(h)
    # Defect form of Hall's theorem: |L| - nu = max_S (|S| - |N(S)|).
    assert len(h.left) - m.size == max_deficiency(h)
    assert len({b for _, b in m.pairs}) == m.size
    for a, b in m.pairs:
        assert b in h.neighborhood([a])
    if m.left_perfect:
        assert m.violator is None
        with pytest.raises(ValueError):
            hall_violator(h, m)
    else:
        check_violator(h, m, m.violator)
        assert hall_violator(h, m) == m.violator
        assert m.violator_neighborhood == h.neighborhood(m.violator)
        # Maximum deficiency is attained by the returned set.
        assert len(m.violator) - len(m.violator_neighborhood) == len(h.left) - m.size


def test_empty_sides():
    assert max_matching(ReachGraph.from_edges([], [], [])).left_perfect
    m = max_matching(ReachGraph.from_edges(["a", "b"], [], []))
    assert m.violator == {"a", "b"}


def test_ties_prefer_low_ids():
    ml, mr = hopcroft_karp([[0, 1], [0, 1]], 2)
    assert ml == [0, 1]


def test_star_violator():
    h = ReachGraph.from_edges(["a", "b", "c"], ["x"], [("a", "x"), ("b", "x"), ("c", "x")])
    m = max_matching(h)
    assert m.size == 1 and m.violator == {"a", "b", "c"}


def test_reach_graph_uses_distances():
    g = gen.path(6)
    h = build_reach_graph(g, [0, 1, 5], [3, 5], 2)
    assert h.left == (0, 1)  # 5 is occupied
    assert h.edges() == [(1, 3)]
    m = max_matching(h)
    assert m.violator == {0}


def test_reach_graph_on_digraph_is_directional():
    d = gen.directed_cycle(4)
    h = build_reach_graph(d, [1], [0], 1)
    assert h.edges() == [(1, 0)]
    h = build_reach_graph(d, [0], [1], 1)
    assert h.edges() == []
