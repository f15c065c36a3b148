"""Simple undirected graphs and connectivity queries.

Top-level graphs use dense ids ``0..n-1``. Induced subgraphs keep the ids of
their parent graph, so a tree or rotation on ``G[S]`` can be compared with one
on ``G`` without relabeling.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable

from .errors import GraphError

MAX_LABELED_TREE_N = 8


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("vertices", "_adj", "_edges")

    def __init__(self, vertices: Iterable[int], adjacency: dict[int, frozenset[int]]):
        self.vertices: tuple[int, ...] = tuple(sorted(vertices))
        self._adj = adjacency
        self._edges: tuple[tuple[int, int], ...] | None = None

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        if self._edges is None:
            self._edges = tuple(
                sorted((u, v) for u in self.vertices for v in self._adj[u] if u < v)
            )
        return self._edges

    @property
    def is_dense(self) -> bool:
        return self.vertices == tuple(range(self.n))

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"vertex {v} not in graph") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def induced(self, s: Iterable[int]) -> Graph:
        """Induced subgraph ``G[s]``, keeping the original vertex ids."""
        keep = frozenset(s)
        missing = keep - self._adj.keys()
        if missing:
            raise GraphError(f"vertices {sorted(missing)} not in graph")
        return Graph(keep, {v: self._adj[v] & keep for v in keep})

    def remove_vertex(self, v: int) -> Graph:
        if v not in self:
            raise GraphError(f"vertex {v} not in graph")
        return self.induced(u for u in self.vertices if u != v)

    def leaves(self) -> list[int]:
        return [v for v in self.vertices if len(self._adj[v]) == 1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"

    def to_json(self) -> dict:
        out: dict = {"n": self.n, "edges": [list(e) for e in self.edges]}
        if not self.is_dense:
            out["vertices"] = list(self.vertices)
        return out

    @classmethod
    def from_json(cls, data: dict) -> Graph:
        try:
            n = int(data["n"])
            edges = [(int(u), int(v)) for u, v in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc
        if "vertices" in data:
            vertices = [int(v) for v in data["vertices"]]
            if len(vertices) != n:
                raise GraphError("'vertices' length does not match 'n'")
            return graph_on(vertices, edges)
        return new_graph(n, edges)


def graph_on(vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on an explicit vertex set (ids need not be dense)."""
    verts = list(vertices)
    if len(set(verts)) != len(verts):
        raise GraphError("duplicate vertex ids")
    adj: dict[int, set[int]] = {v: set() for v in verts}
    for u, v in edges:
        if u not in adj or v not in adj:
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside the vertex set")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(verts, {v: frozenset(nb) for v, nb in adj.items()})


def new_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    return graph_on(range(n), edges)


def path_graph(n: int) -> Graph:
    return new_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return new_graph(n, itertools.combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    """Star ``K_{1,leaves}`` with center 0."""
    return new_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def cycle_graph(n: int) -> Graph:
    return new_graph(n, [(i, (i + 1) % n) for i in range(n)] if n >= 3 else [])


def components(g: Graph, s: Iterable[int]) -> list[frozenset[int]]:
    """Connected components of ``G[s]``, ordered by minimum member."""
    remaining = set(s)
    out = []
    for start in sorted(remaining):
        if start not in remaining:
            continue
        remaining.discard(start)
        comp = [start]
        stack = [start]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y in remaining:
                    remaining.discard(y)
                    comp.append(y)
                    stack.append(y)
        out.append(frozenset(comp))
    return out


def components_after_removal(g: Graph, v: int) -> list[frozenset[int]]:
    if v not in g:
        raise GraphError(f"vertex {v} not in graph")
    return components(g, (u for u in g.vertices if u != v))


def is_connected(g: Graph, s: Iterable[int] | None = None) -> bool:
    """Whether ``G[s]`` is connected (the whole graph when ``s`` is None).

    The empty set is not connected.
    """
    s = set(g.vertices if s is None else s)
    if not s:
        return False
    if not s <= set(g.vertices):
        raise GraphError("subset contains vertices outside the graph")
    return len(components(g, s)) == 1


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def _tree_from_pruefer(seq: tuple[int, ...], n: int) -> Graph:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(i for i in range(n) if degree[i] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (i for i in range(n) if degree[i] == 1)
    edges.append((u, v))
    return new_graph(n, edges)


def enumerate_labeled_trees(n: int) -> list[Graph]:
    """All ``n**(n-2)`` labeled trees on ``0..n-1`` via Prüfer sequences."""
    if not 1 <= n <= MAX_LABELED_TREE_N:
        raise GraphError(f"n must be in [1, {MAX_LABELED_TREE_N}], got {n}")
    if n == 1:
        return [new_graph(1, [])]
    if n == 2:
        return [new_graph(2, [(0, 1)])]
    return [_tree_from_pruefer(seq, n) for seq in itertools.product(range(n), repeat=n - 2)]


def enumerate_connected_graphs(n: int) -> list[Graph]:
    """All connected labeled graphs on ``0..n-1`` (brute force over edge subsets)."""
    if not 1 <= n <= 6:
        raise GraphError(f"n must be in [1, 6], got {n}")
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for mask in range(1 << len(pairs)):
        g = new_graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        if is_connected(g):
            out.append(g)
    return out
