"""Named graph families and constrained random ensembles.

Random families are sampled with a seeded :class:`random.Random`, checked
against their declared constraint, and resampled until it holds or the
retry budget runs out.
"""

from __future__ import annotations

import math
import random
from collections.abc import Callable
from typing import Any

from .graph import Digraph, Graph, GraphError, diameter

DEFAULT_RETRIES = 1000


class GenerationError(GraphError):
    """A constrained family could not be sampled within the retry budget."""


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GenerationError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def lcf(n: int, shifts: list[int], repeats: int) -> Graph:
    """Hamiltonian cycle plus chords given in LCF notation."""
    edges = {(i, (i + 1) % n) for i in range(n)}
    pattern = shifts * repeats
    for i, s in enumerate(pattern):
        edges.add((i, (i + s) % n))
    return Graph.from_edges(n, [(min(u, v), max(u, v)) for u, v in edges])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def heawood() -> Graph:
    return lcf(14, [5, -5], 7)


def mcgee() -> Graph:
    return lcf(24, [12, 7, -7], 8)


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform random labelled tree via a random Pruefer sequence."""
    if n <= 2:
        return path(n)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = (x for x in range(n) if degree[x] == 1)
    edges.append((u, w))
    return Graph.from_edges(n, edges)


def random_graph_diameter(
    n: int, d: int, rng: random.Random, p: float | None = None, retries: int = DEFAULT_RETRIES
) -> Graph:
    """Connected G(n, p) sample with diameter at most ``d``."""
    if n == 1:
        return complete(1)
    if p is None:
        # Rough edge density at which diameter <= d becomes likely.
        p = min(1.0, 2.0 * (n * math.log(n)) ** (1.0 / max(d, 1)) / n)
    for _ in range(retries):
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        g = Graph.from_edges(n, edges)
        if g.is_connected() and diameter(g) <= d:
            return g
    raise GenerationError(f"no connected graph with diameter <= {d} after {retries} tries")


def random_diam2_digraph(
    n: int, rng: random.Random, p: float = 0.5, retries: int = DEFAULT_RETRIES
) -> Digraph:
    """Random digraph with directed diameter at most 2 (hence strongly connected)."""
    if n == 1:
        return Digraph(1, [[]])
    for _ in range(retries):
        arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
        d = Digraph.from_arcs(n, arcs)
        if d.is_strongly_connected() and diameter(d) <= 2:
            return d
    raise GenerationError(f"no diameter-2 digraph on {n} vertices after {retries} tries")


def random_bipartite_diam3_digraph(
    n: int, rng: random.Random, p: float = 0.6, retries: int = DEFAULT_RETRIES
) -> Digraph:
    """Random bipartite digraph (sides ``0..n//2-1`` and the rest), diameter <= 3."""
    if n < 2:
        raise GenerationError("bipartite digraph needs at least 2 vertices")
    half = n // 2
    left, right = range(half), range(half, n)
    pairs = [(u, v) for u in left for v in right] + [(v, u) for u in left for v in right]
    for _ in range(retries):
        d = Digraph.from_arcs(n, [a for a in pairs if rng.random() < p])
        if d.is_strongly_connected() and diameter(d) <= 3:
            return d
    raise GenerationError(f"no bipartite diameter-3 digraph on {n} vertices after {retries} tries")


def directed_cycle(n: int) -> Digraph:
    return Digraph.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])


def bidirected_complete(n: int) -> Digraph:
    return Digraph.from_graph(complete(n))


FAMILIES: dict[str, Callable[..., Any]] = {
    "path": lambda n, rng, **kw: path(n),
    "cycle": lambda n, rng, **kw: cycle(n),
    "complete": lambda n, rng, **kw: complete(n),
    "petersen": lambda rng, **kw: petersen(),
    "heawood": lambda rng, **kw: heawood(),
    "mcgee": lambda rng, **kw: mcgee(),
    "tree": lambda n, rng, **kw: random_tree(n, rng),
    "random-with-diameter-bound": lambda n, rng, d=4, **kw: random_graph_diameter(n, d, rng, **kw),
    "random-diam2-digraph": lambda n, rng, **kw: random_diam2_digraph(n, rng, **kw),
    "random-bipartite-diam3-digraph": lambda n, rng, **kw: random_bipartite_diam3_digraph(n, rng, **kw),
    "directed-cycle": lambda n, rng, **kw: directed_cycle(n),
    "bidirected-complete": lambda n, rng, **kw: bidirected_complete(n),
}

ALIASES = {
    "random-diam": "random-with-diameter-bound",
    "random-diam2": "random-diam2-digraph",
    "random-bip3": "random-bipartite-diam3-digraph",
    "dicycle": "directed-cycle",
}


def generate(family: str, params: dict[str, Any] | None = None, seed: int | None = 0) -> Graph | Digraph:
    """Build a member of ``family``; ``seed`` fixes all randomness."""
    name = ALIASES.get(family, family)
    if name not in FAMILIES:
        raise GenerationError(f"unknown family {family!r}; known: {sorted(FAMILIES)}")
    kwargs = dict(params or {})
    return FAMILIES[name](rng=random.Random(seed), **kwargs)


def parse_gen_spec(spec: str) -> tuple[str, dict[str, Any]]:
    """``"random-diam2:n=8,p=0.4"`` -> ``("random-diam2", {"n": 8, "p": 0.4})``."""
    family, _, rest = spec.partition(":")
    params: dict[str, Any] = {}
    for item in filter(None, rest.split(",")):
        key, _, val = item.partition("=")
        if not _:
            raise GenerationError(f"malformed generator parameter {item!r}")
        try:
            params[key.strip()] = int(val)
        except ValueError:
            params[key.strip()] = float(val)
    return family.strip(), params
