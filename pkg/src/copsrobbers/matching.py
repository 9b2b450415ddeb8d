"""Bipartite maximum matching and maximal Hall violators.

Reach graphs join robber-side vertices (left) to cop-side vertices (right)
when the two are within a given graph distance. When the left side cannot
be matched completely, :func:`hall_violator` returns the left vertices
reachable from unmatched ones along alternating paths. That set ``S`` has
``|S| > |N(S)|``, its neighbourhood is fully matched into ``S``, and the
matching restricted to ``left - S`` covers it.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field

from .graph import _Base

_INF = 1 << 30


@dataclass(frozen=True)
class ReachGraph:
    left: tuple[Hashable, ...]
    right: tuple[Hashable, ...]
    # adj[i] lists indices into ``right``, ascending.
    adj: tuple[tuple[int, ...], ...]
    radius: int | None = None

    @classmethod
    def from_edges(
        cls, left: Sequence[Hashable], right: Sequence[Hashable], edges: Iterable[tuple[Hashable, Hashable]]
    ) -> ReachGraph:
        li = {v: i for i, v in enumerate(left)}
        ri = {v: i for i, v in enumerate(right)}
        if set(li) & set(ri):
            raise ValueError("left and right must be disjoint")
        rows: list[set[int]] = [set() for _ in left]
        for a, b in edges:
            rows[li[a]].add(ri[b])
        return cls(tuple(left), tuple(right), tuple(tuple(sorted(r)) for r in rows))

    def edges(self) -> list[tuple[Hashable, Hashable]]:
        return [(self.left[i], self.right[j]) for i, row in enumerate(self.adj) for j in row]

    def neighborhood(self, S: Iterable[Hashable]) -> frozenset[Hashable]:
        li = {v: i for i, v in enumerate(self.left)}
        return frozenset(self.right[j] for v in S for j in self.adj[li[v]])


@dataclass(frozen=True)
class MatchingResult:
    pairs: tuple[tuple[Hashable, Hashable], ...]
    unmatched_left: frozenset[Hashable]
    violator: frozenset[Hashable] | None = None
    violator_neighborhood: frozenset[Hashable] = field(default_factory=frozenset)

    @property
    def size(self) -> int:
        return len(self.pairs)

    @property
    def left_perfect(self) -> bool:
        return not self.unmatched_left

    def as_dict(self) -> dict[Hashable, Hashable]:
        return dict(self.pairs)


def build_reach_graph(g: _Base, left: Iterable[int], right: Iterable[int], radius: int) -> ReachGraph:
    """Edge ``(l, r)`` iff ``d(l, r) <= radius``; vertices on both sides leave the left.

    Distances run from the right (cop) vertex to the left vertex, which is
    the direction a cop travels on digraphs.
    """
    R = tuple(sorted({g.check_vertex(v) for v in right}))
    rset = set(R)
    L = tuple(sorted({g.check_vertex(v) for v in left} - rset))
    rows = []
    for v in L:
        rows.append(tuple(j for j, c in enumerate(R) if 0 <= g.dist(c, v) <= radius))
    return ReachGraph(L, R, tuple(rows), radius)


def hopcroft_karp(adj: Sequence[Sequence[int]], n_right: int) -> tuple[list[int], list[int]]:
    """Maximum matching on index-labelled bipartite graphs.

    Returns ``(match_left, match_right)`` with ``-1`` for unmatched. Left
    vertices are processed in index order and neighbours in list order, so
    the result is deterministic.
    """
    n_left = len(adj)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    dist = [0] * n_left

    def bfs() -> bool:
        queue = deque()
        for u in range(n_left):
            if match_l[u] < 0:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _INF
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w < 0:
                    found = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u: int) -> bool:
        # Iterative to stay clear of the recursion limit on long paths.
        stack = [(u, iter(adj[u]))]
        path = []
        while stack:
            x, it = stack[-1]
            advanced = False
            for v in it:
                w = match_r[v]
                if w < 0:
                    path.append((x, v))
                    for a, b in path:
                        match_l[a] = b
                        match_r[b] = a
                    return True
                if dist[w] == dist[x] + 1:
                    path.append((x, v))
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                dist[x] = _INF
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for u in range(n_left):
            if match_l[u] < 0:
                dfs(u)
    return match_l, match_r


def _alternating_reach(h: ReachGraph, match_l: list[int], match_r: list[int]) -> tuple[set[int], set[int]]:
    seen_l = {i for i, m in enumerate(match_l) if m < 0}
    seen_r: set[int] = set()
    queue = deque(sorted(seen_l))
    while queue:
        u = queue.popleft()
        for v in h.adj[u]:
            if v in seen_r:
                continue
            seen_r.add(v)
            w = match_r[v]
            if w >= 0 and w not in seen_l:
                seen_l.add(w)
                queue.append(w)
    return seen_l, seen_r


def max_matching(h: ReachGraph) -> MatchingResult:
    match_l, match_r = hopcroft_karp(h.adj, len(h.right))
    pairs = tuple((h.left[i], h.right[j]) for i, j in enumerate(match_l) if j >= 0)
    unmatched = frozenset(h.left[i] for i, j in enumerate(match_l) if j < 0)
    if not unmatched:
        return MatchingResult(pairs, unmatched)
    seen_l, seen_r = _alternating_reach(h, match_l, match_r)
    return MatchingResult(
        pairs,
        unmatched,
        frozenset(h.left[i] for i in seen_l),
        frozenset(h.right[j] for j in seen_r),
    )


def hall_violator(h: ReachGraph, m: MatchingResult) -> frozenset[Hashable]:
    """Maximal deficiency set for a matching that misses some left vertex."""
    if not m.unmatched_left:
        raise ValueError("matching covers the left side; no Hall violator exists")
    li = {v: i for i, v in enumerate(h.left)}
    ri = {v: j for j, v in enumerate(h.right)}
    match_l = [-1] * len(h.left)
    match_r = [-1] * len(h.right)
    for a, b in m.pairs:
        match_l[li[a]] = ri[b]
        match_r[ri[b]] = li[a]
    seen_l, _ = _alternating_reach(h, match_l, match_r)
    return frozenset(h.left[i] for i in seen_l)


def check_violator(h: ReachGraph, m: MatchingResult, S: Iterable[Hashable]) -> None:
    """Raise ``AssertionError`` unless ``S`` is a valid maximal violator for ``m``."""
    S = frozenset(S)
    NS = h.neighborhood(S)
    assert len(S) > len(NS), f"|S|={len(S)} not > |N(S)|={len(NS)}"
    covered = {a for a, _ in m.pairs}
    assert set(h.left) - S <= covered, "left - S not covered by the matching"
    assert NS <= {b for _, b in m.pairs}, "N(S) not fully matched"
