"""Capture on digraphs of diameter 2 (or bipartite of diameter 3) with at most floor(sqrt(2n)) cops.

A stationary cop on a vertex ``v`` catches the robber on ``v`` or on any
out-neighbour of ``v``. Greedily parking cops on vertices of large
out-degree leaves a residual sub-digraph of small maximum out-degree
``k``; there ``k`` guards block every safe exit of the robber in one move
while one chaser closes in.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from .engine import GameState, StrategyFailure
from .graph import Digraph, diameter, shortest_path_step
from .matching import hopcroft_karp


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class DecompositionStep:
    center: int
    residual_order: int  # m before removal
    threshold: int  # floor(sqrt(2m))
    out_degree: int
    removed: tuple[int, ...]


@dataclass
class Decomposition:
    n: int
    centers: list[int]
    steps: list[DecompositionStep]
    residual: frozenset[int]
    max_residual_out_degree: int
    bipartite: bool = False
    guard_side: frozenset[int] = field(default_factory=frozenset)

    @property
    def squad(self) -> int:
        """Endgame cops: one chaser, plus guards unless the residual is tiny."""
        if not self.residual:
            return 0
        if len(self.residual) <= 2:
            return 1
        return self.max_residual_out_degree + 1

    @property
    def cops(self) -> int:
        return max(1, len(self.centers) + self.squad)

    def to_dict(self) -> dict[str, Any]:
        return {
            "centers": self.centers,
            "residual_sizes": [s.residual_order for s in self.steps] + [len(self.residual)],
            "thresholds": [s.threshold for s in self.steps],
            "residual": sorted(self.residual),
            "max_residual_out_degree": self.max_residual_out_degree,
            "cops": self.cops,
            "bipartite": self.bipartite,
        }


def residual_out_degree(d: Digraph, H: frozenset[int] | set[int], v: int) -> int:
    return sum(1 for w in d.out_neighbors(v) if w in H)


def decompose(d: Digraph) -> Decomposition:
    """Greedy centre selection: highest residual out-degree, lowest id on ties."""
    H = set(range(d.n))
    centers: list[int] = []
    steps: list[DecompositionStep] = []
    while H:
        m = len(H)
        thr = math.isqrt(2 * m)
        v = min(H, key=lambda x: (-residual_out_degree(d, H, x), x))
        deg = residual_out_degree(d, H, v)
        if deg < thr:
            break
        removed = tuple(sorted({v} | {w for w in d.out_neighbors(v) if w in H}))
        H -= set(removed)
        centers.append(v)
        steps.append(DecompositionStep(v, m, thr, deg, removed))
    residual = frozenset(H)
    k = max((residual_out_degree(d, residual, v) for v in residual), default=0)
    bip, side = d.is_bipartite()
    return Decomposition(d.n, centers, steps, residual, k, bip, side)


def induction_step_holds(m: int) -> bool:
    """``1 + floor(sqrt(2(m - floor(sqrt(2m)) - 1))) <= floor(sqrt(2m))``."""
    s = math.isqrt(2 * m)
    return 1 + math.isqrt(2 * (m - s - 1)) <= s


def _one_move_guard_edges(d: Digraph, guards: Sequence[int], targets: Sequence[int]) -> list[list[int]]:
    """Guard i -> target j when guard i can reach an in-neighbour of j (or j) in one move."""
    rows = []
    for c in guards:
        reach = set(d.closed_out(c))
        rows.append([j for j, v in enumerate(targets) if v in reach or reach & set(d.in_neighbors(v))])
    return rows


def _guards(d: Digraph, c: int, v: int) -> bool:
    return c == v or d.has_arc(c, v)


def endgame_moves(
    d: Digraph,
    residual: frozenset[int],
    guards: Sequence[int],
    chaser: int,
    r: int,
    guard_side: frozenset[int] | None = None,
) -> tuple[list[int], int]:
    """One cops' turn of the guard/chaser endgame.

    Every out-neighbour of ``r`` inside ``residual`` gets a distinct guard
    standing on it or on one of its in-neighbours; the chaser steps along a
    shortest path to ``r``. When the guards already cover all exits they
    hold still. ``guard_side`` switches to the bipartite variant, where
    guards only act while the robber stands off that side.
    """
    targets = sorted(w for w in d.out_neighbors(r) if w in residual)
    guards = list(guards)
    new_chaser = shortest_path_step(d, chaser, r)
    if len(targets) > len(guards):
        raise PreconditionError(f"robber has {len(targets)} exits but only {len(guards)} guards")
    # Pinned already: hold.
    held = [[j for j, v in enumerate(targets) if _guards(d, c, v)] for c in guards]
    ml, _ = hopcroft_karp(held, len(targets))
    if sum(1 for x in ml if x >= 0) == len(targets):
        return guards, new_chaser
    if guard_side is not None and r in guard_side:
        # Wait on the guard side for the robber to cross.
        out = []
        for c in guards:
            if c in guard_side:
                out.append(c)
            else:
                out.append(min(w for w in d.out_neighbors(c)) if d.out_neighbors(c) else c)
        return out, new_chaser
    rows = _one_move_guard_edges(d, guards, targets)
    ml, _ = hopcroft_karp(rows, len(targets))
    if sum(1 for x in ml if x >= 0) < len(targets):
        raise PreconditionError("guards cannot cover the robber's exits in one move; diameter assumption violated")
    out = []
    for c, j in zip(guards, ml):
        if j < 0:
            out.append(c)
            continue
        v = targets[j]
        if _guards(d, c, v):
            out.append(c)
            continue
        cands = [w for w in d.closed_out(c) if w == v or d.has_arc(w, v)]
        out.append(min(cands))
    return out, new_chaser


class DigraphStrategy:
    """Stationary centres plus guard/chaser squad on the residual.

    Cop order in memory: centres, guards, chaser.
    """

    def __init__(self, d: Digraph, check: bool = True):
        if check:
            if not d.is_strongly_connected():
                raise PreconditionError("digraph is not strongly connected")
            diam = diameter(d)
            bip, _ = d.is_bipartite()
            if not (diam <= 2 or (bip and diam <= 3)):
                raise PreconditionError(f"diameter {diam} exceeds 2 (or 3 for bipartite digraphs)")
        self.d = d
        self.dec = decompose(d)
        diam = diameter(d) if d.n else 0
        self.bipartite_mode = diam > 2
        self.guard_side = self.dec.guard_side if self.bipartite_mode else None
        self.positions: list[int] = []
        self.n_guards = max(0, self.dec.squad - 1)

    @property
    def cops_needed(self) -> int:
        return self.dec.cops

    def _chaser_home(self) -> int:
        H = self.dec.residual
        return min(H, key=lambda v: (-residual_out_degree(self.d, H, v), v))

    def place(self, g, k, rng):
        if k < self.cops_needed:
            raise StrategyFailure(f"strategy needs {self.cops_needed} cops, got {k}")
        pos = list(self.dec.centers)
        if self.dec.residual:
            home = self._chaser_home()
            if self.guard_side is not None:
                gh = min(self.guard_side)
            else:
                gh = home
            pos += [gh] * self.n_guards + [home]
        pos += [pos[-1] if pos else 0] * (k - len(pos))
        self.positions = pos
        return list(pos)

    def move(self, g, state: GameState):
        if sorted(self.positions) != list(state.cops):
            raise StrategyFailure("cop positions out of sync with the referee")
        r = state.robber
        pos = list(self.positions)
        for i, c in enumerate(pos):
            if c == r or self.d.has_arc(c, r):
                pos[i] = r
                self.positions = pos
                return pos
        s = len(self.dec.centers)
        if self.dec.residual and r in self.dec.residual:
            guards = pos[s : s + self.n_guards]
            chaser = pos[s + self.n_guards]
            guards, chaser = endgame_moves(self.d, self.dec.residual, guards, chaser, r, self.guard_side)
            pos[s : s + self.n_guards] = guards
            pos[s + self.n_guards] = chaser
        self.positions = pos
        return pos

    def diagnostics(self) -> dict[str, Any]:
        return {"decomposition": self.dec.to_dict()}


def digraph_strategy(d: Digraph) -> DigraphStrategy:
    return DigraphStrategy(d)
