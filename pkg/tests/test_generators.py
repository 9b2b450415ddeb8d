import random

import pytest

from copsrobbers import generators as gen
from copsrobbers.graph import Digraph, GraphError, diameter, girth


def test_fixed_families():
    assert gen.path(5).m == 4 and gen.cycle(5).m == 5 and gen.complete(5).m == 10
    assert all(gen.mcgee().degree(v) == 3 for v in range(24))
    assert gen.bidirected_complete(4).m == 12


def test_random_tree_is_tree():
    rng = random.Random(1)
    for n in range(1, 15):
        t = gen.random_tree(n, rng)
        assert t.m == n - 1 and t.is_connected()


def test_random_diameter_graph():
    rng = random.Random(2)
    for d in (2, 3, 4):
        g = gen.random_graph_diameter(12, d, rng)
        assert g.is_connected() and diameter(g) <= d


def test_random_digraphs():
    rng = random.Random(3)
    for _ in range(20):
        d = gen.random_diam2_digraph(rng.randint(3, 10), rng)
        assert d.is_strongly_connected() and diameter(d) <= 2
        b = gen.random_bipartite_diam3_digraph(rng.randint(4, 10), rng)
        assert b.is_strongly_connected() and diameter(b) <= 3 and b.is_bipartite()[0]


def test_generate_is_seeded():
    a = gen.generate("random-diam", {"n": 10, "d": 3}, 7)
    b = gen.generate("random-diam", {"n": 10, "d": 3}, 7)
    assert a == b
    assert isinstance(gen.generate("dicycle", {"n": 4}), Digraph)


def test_gen_spec():
    assert gen.parse_gen_spec("random-diam2:n=8,p=0.4") == ("random-diam2", {"n": 8, "p": 0.4})
    assert gen.parse_gen_spec("petersen") == ("petersen", {})
    with pytest.raises(GraphError):
        gen.parse_gen_spec("x:n")
    with pytest.raises(GraphError):
        gen.generate("nope")


def test_named_girths():
    assert girth(gen.generate("mcgee")) == 7
