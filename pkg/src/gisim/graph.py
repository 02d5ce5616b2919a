"""Simple connected undirected graphs with node identifiers."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

ID_BITS = 32


class GraphError(ValueError):
    pass


class DisconnectedGraph(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    """A network: nodes are ``0..n-1``, ``ids[v]`` is the identifier of node ``v``."""

    n: int
    ids: tuple[int, ...]
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError("graph needs at least one node")
        if len(self.ids) != self.n or len(self.adj) != self.n:
            raise GraphError("ids/adjacency length differs from n")
        if len(set(self.ids)) != self.n:
            raise GraphError("identifiers must be pairwise distinct")
        for i in self.ids:
            if not 1 <= i < 2**ID_BITS:
                raise GraphError(f"identifier {i} outside [1, 2^32)")
        for v, nbrs in enumerate(self.adj):
            if list(nbrs) != sorted(set(nbrs)):
                raise GraphError(f"adjacency of {v} not sorted/unique")
            for u in nbrs:
                if u == v:
                    raise GraphError(f"self-loop at {v}")
                if not 0 <= u < self.n or v not in self.adj[u]:
                    raise GraphError(f"asymmetric edge {v}-{u}")
        if not _connected(self.n, self.adj):
            raise DisconnectedGraph("graph is not connected")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        ids: Sequence[int] | None = None,
    ) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range")
            nbrs[u].add(v)
            nbrs[v].add(u)
        if ids is None:
            ids = range(1, n + 1)
        return cls(n, tuple(ids), tuple(tuple(sorted(s)) for s in nbrs))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def index_of(self, node_id: int) -> int:
        return self._index[node_id]

    def with_ids(self, ids: Sequence[int]) -> "Graph":
        return Graph(self.n, tuple(ids), self.adj)

    def same_edges(self, other: "Graph") -> bool:
        return self.n == other.n and self.adj == other.adj

    def induced(self, nodes: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled ``0..len(nodes)-1`` in the given order."""
        pos = {v: i for i, v in enumerate(nodes)}
        edges = [(pos[u], pos[v]) for u in nodes for v in self.adj[u] if v in pos and pos[u] < pos[v]]
        return Graph.from_edges(len(nodes), edges, [self.ids[v] for v in nodes])

    def bfs(self, source: int) -> tuple[list[int], list[int | None]]:
        """Distances and BFS parents, scanning neighbours in increasing identifier order."""
        dist = [-1] * self.n
        parent: list[int | None] = [None] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in sorted(self.adj[u], key=lambda x: self.ids[x]):
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
        return dist, parent

    def shortest_path(self, s: int, t: int) -> list[int]:
        _, parent = self.bfs(s)
        path = [t]
        while path[-1] != s:
            p = parent[path[-1]]
            assert p is not None
            path.append(p)
        return path[::-1]

    @property
    def _adjsets(self) -> tuple[frozenset[int], ...]:
        cached = self.__dict__.get("_adjsets_cache")
        if cached is None:
            cached = tuple(frozenset(a) for a in self.adj)
            object.__setattr__(self, "_adjsets_cache", cached)
        return cached

    @property
    def _index(self) -> dict[int, int]:
        cached = self.__dict__.get("_index_cache")
        if cached is None:
            cached = {i: v for v, i in enumerate(self.ids)}
            object.__setattr__(self, "_index_cache", cached)
        return cached


def _connected(n: int, adj: Sequence[Sequence[int]]) -> bool:
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == n


def is_connected(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return n > 0 and _connected(n, adj)


def connected_graphs(n: int) -> Iterator[Graph]:
    """Every connected labelled graph on ``n`` nodes (2^(n choose 2) candidates)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [p for b, p in enumerate(pairs) if mask >> b & 1]
        if is_connected(n, edges):
            yield Graph.from_edges(n, edges)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
