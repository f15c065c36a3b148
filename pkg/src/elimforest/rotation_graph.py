"""Exhaustive search trees, rotation graphs, exact distances and diameters.

Everything here is brute force and guarded by caps, since the number of search
trees grows super-exponentially.
"""

from __future__ import annotations

import os
import time
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import CapExceeded, InvalidTreeError
from .graph import Graph, components, is_connected
from .rotation import neighbors_in_rotation_graph, rotate_unchecked
from .search_tree import SearchTree, require_valid

DEFAULT_MAX_NODES = 10**7


def default_max_nodes() -> int:
    return int(os.environ.get("EF_MAX_NODES", DEFAULT_MAX_NODES))


def count_search_trees(g: Graph, max_nodes: int | None = None) -> int:
    if not is_connected(g):
        raise InvalidTreeError("graph must be connected")

    @lru_cache(maxsize=None)
    def count(part: frozenset[int]) -> int:
        total = 0
        for r in part:
            sub = 1
            for comp in components(g, part - {r}):
                sub *= count(comp)
            total += sub
        return total

    total = count(frozenset(g.vertices))
    if max_nodes is not None and total > max_nodes:
        raise CapExceeded(f"{total} search trees exceed the cap of {max_nodes}", partial=total)
    return total


def enumerate_search_trees(g: Graph, max_nodes: int | None = None) -> list[SearchTree]:
    """Every search tree on ``g`` exactly once, sorted by canonical key."""
    cap = default_max_nodes() if max_nodes is None else max_nodes
    count_search_trees(g, cap)

    @lru_cache(maxsize=None)
    def trees(part: frozenset[int]) -> tuple[tuple[int, tuple[tuple[int, int], ...]], ...]:
        out = []
        for r in sorted(part):
            subs = [trees(comp) for comp in components(g, part - {r})]
            for combo in product(*subs):
                pairs: list[tuple[int, int]] = []
                for sub_root, sub_pairs in combo:
                    pairs.append((sub_root, r))
                    pairs.extend(sub_pairs)
                out.append((r, tuple(pairs)))
        return tuple(out)

    result = [SearchTree(r, dict(pairs)) for r, pairs in trees(frozenset(g.vertices))]
    result.sort(key=lambda t: t.key)
    return result


@dataclass
class RotationGraph:
    nodes: list[SearchTree]
    edges: list[tuple[int, int]]
    adjacency: list[list[int]] = field(repr=False)

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def bfs(self, source: int) -> list[int]:
        dist = [-1] * len(self.nodes)
        dist[source] = 0
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in self.adjacency[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def is_connected(self) -> bool:
        return not self.nodes or min(self.bfs(0)) >= 0

    def diameter(self) -> int:
        """All-pairs unweighted shortest paths (scipy), maximum entry."""
        n = len(self.nodes)
        if n <= 1:
            return 0
        rows = [i for i, j in self.edges]
        cols = [j for i, j in self.edges]
        mat = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
        dist = shortest_path(mat, directed=False, unweighted=True)
        if np.isinf(dist).any():
            raise ValueError("rotation graph is disconnected")
        return int(dist.max())

    def diameter_bfs(self) -> int:
        """Plain BFS from every node; slow, kept as a cross-check."""
        best = 0
        for s in range(len(self.nodes)):
            dist = self.bfs(s)
            if min(dist) < 0:
                raise ValueError("rotation graph is disconnected")
            best = max(best, max(dist))
        return best

    def stats(self, with_diameter: bool = True) -> dict:
        out = {"nodes": len(self.nodes), "edges": len(self.edges)}
        if with_diameter:
            out["diameter"] = self.diameter()
        return out

    def to_dot(self, labels: bool = False) -> str:
        lines = ["graph rotation_graph {"]
        for i, t in enumerate(self.nodes):
            if labels:
                parent = ",".join(f"{v}:{p}" for v, p in sorted(t.parent_map().items()))
                lines.append(f'  n{i} [label="r={t.root} {parent}"];')
            else:
                lines.append(f'  n{i} [label="{i}"];')
        lines.extend(f"  n{i} -- n{j};" for i, j in self.edges)
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_rotation_graph(g: Graph, max_nodes: int | None = None) -> RotationGraph:
    nodes = enumerate_search_trees(g, max_nodes)
    index = {t.key: i for i, t in enumerate(nodes)}
    adjacency: list[list[int]] = [[] for _ in nodes]
    edges = []
    for i, t in enumerate(nodes):
        for nb in neighbors_in_rotation_graph(g, t):
            j = index[nb.key]
            adjacency[i].append(j)
            if i < j:
                edges.append((i, j))
    for a in adjacency:
        a.sort()
    edges.sort()
    return RotationGraph(nodes, edges, adjacency)


def diameter(g: Graph, max_nodes: int | None = None) -> int:
    return build_rotation_graph(g, max_nodes).diameter()


def distance(
    g: Graph,
    t1: SearchTree,
    t2: SearchTree,
    max_nodes: int | None = None,
    max_seconds: float | None = None,
) -> int:
    """Exact rotation distance by bidirectional BFS over the implicit graph.

    ``max_nodes`` bounds the number of trees held in both frontiers' visited
    sets combined.
    """
    require_valid(g, t1)
    require_valid(g, t2)
    cap = default_max_nodes() if max_nodes is None else max_nodes
    if t1 == t2:
        return 0
    deadline = None if max_seconds is None else time.monotonic() + max_seconds
    seen = [{t1.key: 0}, {t2.key: 0}]
    frontier = [[t1], [t2]]
    while frontier[0] and frontier[1]:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        mine, other = seen[side], seen[1 - side]
        nxt = []
        best = None
        for t in frontier[side]:
            d = mine[t.key] + 1
            for u, v in t.edges():
                nb = rotate_unchecked(g, t, u, v)
                if nb.key in mine:
                    continue
                if nb.key in other:
                    total = d + other[nb.key]
                    best = total if best is None else min(best, total)
                    continue
                mine[nb.key] = d
                nxt.append(nb)
            if len(seen[0]) + len(seen[1]) > cap:
                raise CapExceeded(
                    f"visited {len(seen[0]) + len(seen[1])} trees, cap is {cap}",
                    partial=len(seen[0]) + len(seen[1]),
                )
            if deadline is not None and time.monotonic() > deadline:
                raise CapExceeded(f"time limit of {max_seconds}s exceeded",
                                  partial=len(seen[0]) + len(seen[1]))
        if best is not None:
            return best
        frontier[side] = nxt
    raise InvalidTreeError("trees are not connected in the rotation graph")
