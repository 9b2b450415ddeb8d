"""Exact k-cop win decision by retrograde analysis.

The win table is stored as a dense tensor indexed by an ordered tuple of
cop positions followed by the robber position. Each cop moves
independently, so "some joint cop move reaches a winning state" factors
into one existential per cop axis: a matrix product with the closed
adjacency matrix along that axis. The table is symmetric under permuting
the cop axes, so every query is made on the sorted (canonical) multiset.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .graph import Digraph, Graph

DEFAULT_STATE_BUDGET = int(os.environ.get("COPSROBBERS_STATE_BUDGET", 5 * 10**7))


class SolverBudgetError(MemoryError):
    """The table for this instance would exceed the configured state budget."""


def multiset_count(n: int, k: int) -> int:
    return math.comb(n + k - 1, k)


def multiset_index(cops: Sequence[int], n: int) -> int:
    """Dense colex-style rank of a sorted multiset of ``k`` values in ``0..n-1``.

    Uses the bijection with ``k``-subsets of ``0..n+k-2`` via ``c_i + i``.
    """
    c = sorted(cops)
    return sum(math.comb(v + i, i + 1) for i, v in enumerate(c))


def multiset_unrank(index: int, n: int, k: int) -> tuple[int, ...]:
    out = []
    for i in range(k, 0, -1):
        # Largest x with comb(x, i) <= index, then undo the +i shift.
        x = i - 1
        while math.comb(x + 1, i) <= index:
            x += 1
        index -= math.comb(x, i)
        out.append(x - (i - 1))
    return tuple(reversed(out))


@dataclass(frozen=True)
class SolverState:
    cops: tuple[int, ...]
    robber: int
    cops_to_move: bool

    def index(self, n: int) -> int:
        base = multiset_index(self.cops, n) * n + self.robber
        return 2 * base + (0 if self.cops_to_move else 1)


@dataclass
class WinTable:
    """Cop-win flags with capture ranks; ``-1`` marks robber-win states.

    ``cop_rank[c..., r]`` is the number of cop moves the cops need from a
    cops-to-move state; ``robber_rank`` the same measured from the state
    just before the robber moves.
    """

    g: Graph | Digraph
    k: int
    arena: frozenset[int]
    cop_rank: np.ndarray | None
    robber_rank: np.ndarray | None
    placement: tuple[int, ...] | None
    iterations: int = 0
    elapsed_ms: float = 0.0
    trivial: bool = False
    _closed: np.ndarray | None = field(default=None, repr=False)
    _robber_moves: np.ndarray | None = field(default=None, repr=False)

    @property
    def copwin(self) -> bool:
        return self.placement is not None

    @property
    def states(self) -> int:
        return multiset_count(self.g.n, self.k) * len(self.arena) * 2

    def cop_to_move_rank(self, cops: Sequence[int], robber: int) -> int:
        if robber in cops:
            return 0
        if self.trivial:
            return -1
        return int(self.cop_rank[tuple(sorted(cops)) + (robber,)])

    def robber_to_move_rank(self, cops: Sequence[int], robber: int) -> int:
        if robber in cops:
            return 0
        if self.trivial:
            return -1
        return int(self.robber_rank[tuple(sorted(cops)) + (robber,)])

    def cops_win_from(self, cops: Sequence[int], robber: int) -> bool:
        return self.cop_to_move_rank(cops, robber) >= 0

    def is_fixed_point(self) -> bool:
        if self.trivial:
            return True
        C = self.cop_rank >= 0
        R = self.robber_rank >= 0
        cap = _capture_tensor(self.g.n, self.k)
        C2, R2 = _step(C, R, cap, self._closed, self._robber_moves, self.k)
        return bool(np.array_equal(C, C2) and np.array_equal(R, R2))


def _capture_tensor(n: int, k: int) -> np.ndarray:
    shape = (n,) * (k + 1)
    cap = np.zeros(shape, dtype=bool)
    idx = np.indices(shape, sparse=True)
    for j in range(k):
        cap |= idx[j] == idx[k]
    return cap


def _robber_matrix(g: Graph | Digraph, arena: frozenset[int]) -> np.ndarray:
    M = np.zeros((g.n, g.n), dtype=np.float32)
    for r in arena:
        M[r, r] = 1
        for w in g.out_neighbors(r):
            if w in arena:
                M[r, w] = 1
    return M


def _exists_cop_move(X: np.ndarray, closed: np.ndarray, k: int) -> np.ndarray:
    Y = X.astype(np.float32)
    for j in range(k):
        Y = np.moveaxis(np.tensordot(closed, Y, axes=([1], [j])), 0, j)
        np.minimum(Y, 1, out=Y)
    return Y > 0


def _step(C, R, cap, closed, M, k):
    C2 = cap | _exists_cop_move(R, closed, k)
    escape = np.tensordot((~C2).astype(np.float32), M, axes=([k], [1])) > 0
    R2 = cap | ~escape
    return C2, R2


def solve(
    g: Graph | Digraph,
    k: int,
    arena: Iterable[int] | None = None,
    arena_arcs: Iterable[tuple[int, int]] | None = None,
    budget: int = DEFAULT_STATE_BUDGET,
) -> WinTable:
    """Build the win table for ``k`` cops.

    ``arena``/``arena_arcs`` restrict where the robber may stand and move
    (default: all of ``g``); cops always move on ``g``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = g.n
    arena_set = frozenset(range(n)) if arena is None else frozenset(arena)
    start = time.perf_counter()
    if k >= len(arena_set):
        # One cop on every robber-accessible vertex.
        placement = tuple(sorted(arena_set)) + (min(arena_set, default=0),) * (k - len(arena_set))
        return WinTable(g, k, arena_set, None, None, tuple(sorted(placement)), trivial=True)
    cells = n ** (k + 1) * 2
    if cells > budget:
        raise SolverBudgetError(f"{cells} table cells for n={n}, k={k} exceed budget {budget}")
    closed = g.adjacency_matrix(closed=True).astype(np.float32)
    if arena_arcs is None:
        M = _robber_matrix(g, arena_set)
    else:
        M = np.zeros((n, n), dtype=np.float32)
        for r in arena_set:
            M[r, r] = 1
        for u, v in arena_arcs:
            if v not in g.out_neighbors(u):
                raise ValueError(f"arena arc {u}->{v} is not an arc of the host")
            if u in arena_set and v in arena_set:
                M[u, v] = 1
    cap = _capture_tensor(n, k)
    C = cap.copy()
    R = cap.copy()
    crank = np.where(cap, 0, -1).astype(np.int32)
    rrank = crank.copy()
    t = 0
    while True:
        t += 1
        C2, R2 = _step(C, R, cap, closed, M, k)
        newC = C2 & ~C
        newR = R2 & ~R
        if not newC.any() and not newR.any():
            break
        crank[newC] = t
        rrank[newR] = t
        C, R = C2, R2
    arena_idx = np.array(sorted(arena_set), dtype=np.intp)
    good = C[..., arena_idx].all(axis=-1)
    placement = None
    if good.any():
        worst = np.where(good, crank[..., arena_idx].max(axis=-1), np.iinfo(np.int32).max)
        best = int(worst.min())
        cands = np.argwhere(worst == best)
        placement = min(tuple(sorted(int(x) for x in c)) for c in cands)
    elapsed = (time.perf_counter() - start) * 1000
    return WinTable(g, k, arena_set, crank, rrank, placement, t, elapsed, False, closed, M)


@lru_cache(maxsize=128)
def _cached_solve(g, k, arena, budget):
    return solve(g, k, arena, budget=budget)


def win_table(g: Graph | Digraph, k: int, arena: frozenset[int] | None = None, budget: int = DEFAULT_STATE_BUDGET) -> WinTable:
    """Memoised :func:`solve` for repeated queries on the same instance."""
    return _cached_solve(g, k, None if arena is None else frozenset(arena), budget)


def cop_win(g: Graph | Digraph, k: int, budget: int = DEFAULT_STATE_BUDGET) -> bool:
    return win_table(g, k, budget=budget).copwin


def cop_number(g: Graph | Digraph, budget: int = DEFAULT_STATE_BUDGET, max_k: int | None = None) -> int:
    """Least ``k`` for which ``k`` cops win; tries ``k = 1, 2, ...``."""
    top = max(g.n, 1) if max_k is None else max_k
    for k in range(1, top + 1):
        if win_table(g, k, budget=budget).copwin:
            return k
    raise SolverBudgetError(f"no winning k <= {top}")


def restricted_cop_number(
    d: Graph | Digraph,
    vertices: Iterable[int],
    arcs: Iterable[tuple[int, int]] | None = None,
    budget: int = DEFAULT_STATE_BUDGET,
) -> int:
    """Cop number when the robber lives on a sub-digraph and cops on ``d``.

    ``arcs`` defaults to the arcs of ``d`` induced on ``vertices``.
    """
    vs = frozenset(d.check_vertex(v) for v in vertices)
    if not vs:
        raise ValueError("sub-digraph must have a vertex")
    arc_list = None if arcs is None else list(arcs)
    for k in range(1, len(vs) + 1):
        if solve(d, k, vs, arc_list, budget).copwin:
            return k
    raise AssertionError("unreachable: |V(H)| cops always win")


class OptimalRobber:
    """Robber that never enters a cop-winning state when it can avoid it.

    When every option loses it picks the one with the largest capture
    rank. Ties go to the vertex farthest from the nearest cop, then to the
    lowest id.
    """

    def __init__(self, table: WinTable):
        self.table = table

    def _score(self, g, cops, v):
        if v in cops:
            return (-2, 0, -v)
        rank = self.table.cop_to_move_rank(cops, v)
        far = min(g.dist(c, v) if g.dist(c, v) >= 0 else g.n for c in cops)
        if rank < 0:
            return (1 << 20, far, -v)
        return (rank, far, -v)

    def place(self, g, cops):
        options = sorted(self.table.arena)
        return max(options, key=lambda v: self._score(g, cops, v))

    def move(self, g, state):
        r = state.robber
        options = [r] + [w for w in g.out_neighbors(r) if w in self.table.arena]
        return max(options, key=lambda v: self._score(g, state.cops, v))


def optimal_robber(g: Graph | Digraph, k: int, arena: frozenset[int] | None = None) -> OptimalRobber:
    return OptimalRobber(win_table(g, k, arena))


class OptimalCops:
    """Cop side of the win table: always move to the lowest-rank successor."""

    def __init__(self, table: WinTable):
        self.table = table

    def place(self, g, k, rng):
        if self.table.placement is None:
            return [0] * k
        return list(self.table.placement)

    def move(self, g, state):
        r = state.robber
        options = [g.closed_out(c) for c in state.cops]
        best = None
        for combo in set(tuple(sorted(p)) for p in itertools.product(*options)):
            rank = self.table.robber_to_move_rank(combo, r)
            key = (rank < 0, rank, combo)
            if best is None or key < best:
                best = key
        return list(best[2])
