"""Simple reference strategies for both sides."""

from __future__ import annotations

import random

from .engine import GameState
from .graph import shortest_path_step


class TrivialCops:
    """One cop per vertex when the budget allows, otherwise spread out and chase."""

    def place(self, g, k, rng):
        if k >= g.n:
            return list(range(g.n)) + [0] * (k - g.n)
        return [int(v) * g.n // k for v in range(k)]

    def move(self, g, state: GameState):
        r = state.robber
        out = []
        for c in state.cops:
            d = g.dist(c, r)
            out.append(c if d < 0 else shortest_path_step(g, c, r))
        return out


class RandomRobber:
    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def place(self, g, cops):
        free = [v for v in range(g.n) if v not in cops]
        return self.rng.choice(free) if free else 0

    def move(self, g, state):
        r = state.robber
        return self.rng.choice([r, *g.out_neighbors(r)])


class GreedyDistanceRobber:
    """Maximises distance to the nearest cop; avoids cop neighbourhoods; lowest id on ties."""

    @staticmethod
    def _score(g, cops, v):
        ds = [g.dist(c, v) for c in cops]
        ds = [g.n if d < 0 else d for d in ds]
        near = min(ds)
        return (near > 1, near, sum(ds), -v)

    def place(self, g, cops):
        return max(range(g.n), key=lambda v: self._score(g, cops, v))

    def move(self, g, state):
        r = state.robber
        return max([r, *g.out_neighbors(r)], key=lambda v: self._score(g, state.cops, v))
