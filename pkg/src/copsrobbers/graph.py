"""Immutable graphs and digraphs with breadth-first metric queries."""

from __future__ import annotations

import threading
from collections import OrderedDict, deque
from collections.abc import Iterable, Sequence

import numpy as np

#: Girth of a forest.
INFINITE = float("inf")

#: Graphs up to this order keep a full all-pairs distance table.
FULL_TABLE_CUTOFF = 2048

UNREACHABLE = -1


class GraphError(ValueError):
    """Raised for malformed graphs or queries outside the vertex range."""


def _freeze_adjacency(n: int, rows: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    frozen = []
    for v, row in enumerate(rows):
        nbrs = sorted(set(row))
        for w in nbrs:
            if not 0 <= w < n:
                raise GraphError(f"neighbor {w} of {v} out of range 0..{n - 1}")
            if w == v:
                raise GraphError(f"self-loop at {v}")
        frozen.append(tuple(nbrs))
    if len(frozen) != n:
        raise GraphError(f"expected {n} adjacency rows, got {len(frozen)}")
    return tuple(frozen)


class _Base:
    """Shared vertex-range checks and distance oracle plumbing."""

    n: int
    directed: bool

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        raise NotImplementedError

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        raise NotImplementedError

    @property
    def vertices(self) -> range:
        return range(self.n)

    def check_vertex(self, v: int) -> int:
        if not isinstance(v, (int, np.integer)) or not 0 <= v < self.n:
            raise GraphError(f"vertex {v!r} out of range 0..{self.n - 1}")
        return int(v)

    def closed_out(self, v: int) -> tuple[int, ...]:
        """The vertices reachable from ``v`` in one move, ``v`` itself included."""
        return tuple(sorted((v, *self.out_neighbors(v))))

    @property
    def oracle(self) -> DistanceOracle:
        # Built lazily; the race on first access is benign since both
        # candidates are equal and immutable.
        o = self.__dict__.get("_oracle")
        if o is None:
            o = DistanceOracle(self)
            self.__dict__["_oracle"] = o
        return o

    def dist(self, u: int, v: int) -> int:
        """Directed distance from ``u`` to ``v``; ``UNREACHABLE`` if none."""
        return self.oracle.dist(u, v)

    def adjacency_matrix(self, closed: bool = False) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for v in range(self.n):
            a[v, list(self.out_neighbors(v))] = True
        if closed:
            np.fill_diagonal(a, True)
        return a


class Graph(_Base):
    """Simple undirected graph on vertices ``0..n-1``.

    Adjacency lists are sorted tuples; the object is immutable and hashable
    by its edge set, so it can be shared across threads and used as a cache
    key.
    """

    directed = False

    def __init__(self, n: int, adjacency: Iterable[Iterable[int]]):
        if n < 0:
            raise GraphError("negative vertex count")
        self.n = n
        self.adjacency = _freeze_adjacency(n, adjacency)
        for v, row in enumerate(self.adjacency):
            for w in row:
                if v not in self.adjacency[w]:
                    raise GraphError(f"adjacency not symmetric at edge {v}-{w}")
        self._connected: bool | None = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            rows[u].add(v)
            rows[v].add(u)
        return cls(n, rows)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    out_neighbors = neighbors
    in_neighbors = neighbors

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    @property
    def m(self) -> int:
        return sum(len(r) for r in self.adjacency) // 2

    def is_connected(self) -> bool:
        if self._connected is None:
            self._connected = self.n == 0 or len(_bfs(self, [0])) == self.n
        return self._connected

    def induced(self, keep: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph, relabelled; also returns new-id -> old-id."""
        order = sorted(set(keep))
        index = {v: i for i, v in enumerate(order)}
        rows = [[index[w] for w in self.adjacency[v] if w in index] for v in order]
        return Graph(len(order), rows), order

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((False, self.n, self.adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class Digraph(_Base):
    """Simple digraph: no loops, at most one arc per ordered pair.

    Both arc directions between a pair are allowed. ``in_adj`` is the exact
    transpose of ``out_adj``.
    """

    directed = True

    def __init__(self, n: int, out_adjacency: Iterable[Iterable[int]]):
        if n < 0:
            raise GraphError("negative vertex count")
        self.n = n
        self.out_adj = _freeze_adjacency(n, out_adjacency)
        ins: list[list[int]] = [[] for _ in range(n)]
        for v, row in enumerate(self.out_adj):
            for w in row:
                ins[w].append(v)
        self.in_adj = tuple(tuple(sorted(r)) for r in ins)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
        rows: list[set[int]] = [set() for _ in range(n)]
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"arc ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            rows[u].add(v)
        return cls(n, rows)

    @classmethod
    def from_graph(cls, g: Graph) -> Digraph:
        """The symmetric digraph with both arcs for every edge."""
        return cls(g.n, g.adjacency)

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self.out_adj[v]

    neighbors = out_neighbors

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self.in_adj[v]

    def out_degree(self, v: int) -> int:
        return len(self.out_adj[v])

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.out_adj[u]]

    @property
    def m(self) -> int:
        return sum(len(r) for r in self.out_adj)

    def has_arc(self, u: int, v: int) -> bool:
        return v in self.out_adj[u]

    def is_strongly_connected(self) -> bool:
        if self.n == 0:
            return True
        if len(_bfs(self, [0])) != self.n:
            return False
        back: set[int] = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for w in self.in_adj[v]:
                if w not in back:
                    back.add(w)
                    queue.append(w)
        return len(back) == self.n

    def is_bipartite(self) -> tuple[bool, frozenset[int]]:
        """Bipartiteness of the underlying graph and one colour class."""
        side = [-1] * self.n
        for s in range(self.n):
            if side[s] >= 0:
                continue
            side[s] = 0
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w in (*self.out_adj[v], *self.in_adj[v]):
                    if side[w] < 0:
                        side[w] = 1 - side[v]
                        queue.append(w)
                    elif side[w] == side[v]:
                        return False, frozenset()
        return True, frozenset(v for v in range(self.n) if side[v] == 0)

    def induced(self, keep: Iterable[int]) -> Digraph:
        """Sub-digraph on the same vertex ids keeping only arcs inside ``keep``.

        Vertices outside ``keep`` become isolated; use :func:`vertex_set`
        bookkeeping to know which ids belong to the sub-digraph.
        """
        kept = set(keep)
        rows = [[w for w in self.out_adj[v] if w in kept] if v in kept else [] for v in range(self.n)]
        return Digraph(self.n, rows)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Digraph) and self.n == other.n and self.out_adj == other.out_adj

    def __hash__(self) -> int:
        return hash((True, self.n, self.out_adj))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.m})"


def _bfs(g: _Base, sources: Iterable[int], limit: int | None = None) -> dict[int, int]:
    dist: dict[int, int] = {}
    queue: deque[int] = deque()
    for s in sources:
        if s not in dist:
            dist[s] = 0
            queue.append(s)
    while queue:
        v = queue.popleft()
        d = dist[v]
        if limit is not None and d >= limit:
            continue
        for w in g.out_neighbors(v):
            if w not in dist:
                dist[w] = d + 1
                queue.append(w)
    return dist


class DistanceOracle:
    """All-pairs BFS distances, or cached per-source rows for large graphs.

    Rows are ``int32`` arrays with ``UNREACHABLE`` for vertices that cannot
    be reached. The row cache is guarded by a lock so one oracle can be
    shared between worker threads.
    """

    def __init__(self, g: _Base, cutoff: int = FULL_TABLE_CUTOFF, cache_rows: int = 256):
        self.g = g
        self._lock = threading.Lock()
        self._cache_rows = cache_rows
        self._rows: OrderedDict[int, np.ndarray] = OrderedDict()
        self.table: np.ndarray | None = None
        if g.n <= cutoff:
            table = np.full((g.n, g.n), UNREACHABLE, dtype=np.int32)
            for s in range(g.n):
                table[s] = self._bfs_row(s)
            table.setflags(write=False)
            self.table = table

    def _bfs_row(self, s: int) -> np.ndarray:
        row = np.full(self.g.n, UNREACHABLE, dtype=np.int32)
        for v, d in _bfs(self.g, [s]).items():
            row[v] = d
        return row

    def row(self, s: int) -> np.ndarray:
        if self.table is not None:
            return self.table[s]
        with self._lock:
            r = self._rows.get(s)
            if r is not None:
                self._rows.move_to_end(s)
                return r
        r = self._bfs_row(s)
        r.setflags(write=False)
        with self._lock:
            self._rows[s] = r
            if len(self._rows) > self._cache_rows:
                self._rows.popitem(last=False)
        return r

    def dist(self, u: int, v: int) -> int:
        return int(self.row(u)[v])


def _check_set(g: _Base, vertices: Iterable[int]) -> list[int]:
    return [g.check_vertex(v) for v in vertices]


def ball(g: _Base, A: Iterable[int], i: int) -> frozenset[int]:
    """Vertices reachable from some vertex of ``A`` by a path of length ``<= i``."""
    if i < 0:
        raise GraphError("radius must be non-negative")
    return frozenset(_bfs(g, _check_set(g, A), limit=i))


def sphere(g: _Base, A: Iterable[int], i: int) -> frozenset[int]:
    """Vertices at distance exactly ``i`` from ``A``."""
    if i < 1:
        raise GraphError("sphere radius must be at least 1")
    return frozenset(v for v, d in _bfs(g, _check_set(g, A), limit=i).items() if d == i)


def distances_from(g: _Base, A: Iterable[int]) -> dict[int, int]:
    """Multi-source BFS distances from ``A``; unreachable vertices are absent."""
    return _bfs(g, _check_set(g, A))


def eccentricity(g: _Base, v: int) -> int:
    d = _bfs(g, [v])
    if len(d) != g.n:
        raise GraphError("graph is not (strongly) connected")
    return max(d.values())


def diameter(g: _Base) -> int:
    """Exact (directed) diameter by a BFS sweep from every vertex."""
    if g.n == 0:
        raise GraphError("empty graph has no diameter")
    return max(eccentricity(g, v) for v in range(g.n))


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle, or ``INFINITE`` for forests.

    For every edge ``uv`` the shortest ``u``-``v`` path avoiding that edge
    closes the shortest cycle through it.
    """
    best: int | float = INFINITE
    for u, v in g.edges():
        dist = {u: 0}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if dist[x] + 2 >= best:
                break
            for y in g.adjacency[x]:
                if (x, y) in ((u, v), (v, u)) or y in dist:
                    continue
                dist[y] = dist[x] + 1
                queue.append(y)
            if v in dist:
                break
        if v in dist:
            best = min(best, dist[v] + 1)
    return best


def rho(g_girth: int | float) -> int | float:
    """Protected-ball radius ``floor((girth + 1) / 4)`` for guard pairs."""
    if g_girth == INFINITE:
        return INFINITE
    return (int(g_girth) + 1) // 4


def shortest_path_step(g: _Base, src: int, dst: int) -> int:
    """Next vertex on a shortest ``src``->``dst`` path, lowest id on ties.

    Returns ``src`` when already there.
    """
    if src == dst:
        return src
    d = g.dist(src, dst)
    if d == UNREACHABLE:
        raise GraphError(f"{dst} unreachable from {src}")
    for w in g.out_neighbors(src):
        if g.dist(w, dst) == d - 1:
            return w
    raise AssertionError("BFS tables inconsistent")


def step_toward_set(g: _Base, src: int, targets: Sequence[int] | frozenset[int]) -> int:
    """One step toward the nearest vertex of ``targets`` (lowest id on ties)."""
    best = min(targets, key=lambda t: (g.dist(src, t) if g.dist(src, t) >= 0 else 1 << 30, t))
    return shortest_path_step(g, src, best)
