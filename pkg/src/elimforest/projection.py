"""Pruning and projection of search trees and rotation sequences.

Only defined when the host graph is a tree. The projection ``T|S`` onto a
connected vertex set ``S`` is reached by pruning leaves of the host outside
``S`` one at a time; the order does not matter.
"""

from __future__ import annotations

from collections.abc import Iterable

from .errors import GraphError, InvalidTreeError, RotationError
from .graph import Graph, components, graph_on, is_connected, is_tree
from .rotation import Rotation, rotate_unchecked
from .search_tree import SearchTree, require_valid


def _prune(t: SearchTree, x: int) -> SearchTree:
    children = t.children(x)
    if len(children) > 1:
        raise InvalidTreeError(f"{x} has {len(children)} children; a graph leaf has at most one")
    parent = t.parent_map()
    if x == t.root:
        (c,) = children
        del parent[c]
        return SearchTree(c, parent)
    p = parent.pop(x)
    if children:
        parent[children[0]] = p
    return SearchTree(t.root, parent)


def prune_leaf(g: Graph, t: SearchTree, x: int) -> SearchTree:
    """Remove the graph leaf ``x`` from ``t``, giving a search tree on ``g - x``.

    Three cases: ``x`` is a leaf of ``t`` (delete it), ``x`` has one child
    (splice it out), or ``x`` is the root (its child becomes the root).
    """
    if not is_tree(g):
        raise GraphError("pruning needs a tree as host graph")
    if g.n < 2 or x not in g or g.degree(x) != 1:
        raise GraphError(f"{x} is not a leaf of the host graph")
    require_valid(g, t)
    return _prune(t, x)


def _check_subset(g: Graph, s: Iterable[int]) -> frozenset[int]:
    if not is_tree(g):
        raise GraphError("projection needs a tree as host graph")
    s = frozenset(s)
    if not s:
        raise GraphError("projection set is empty")
    if not s <= frozenset(g.vertices):
        raise GraphError("projection set has vertices outside the graph")
    if not is_connected(g, s):
        raise GraphError("projection set does not induce a connected subgraph")
    return s


def project_tree(g: Graph, t: SearchTree, s: Iterable[int]) -> SearchTree:
    """Prune the smallest-id host leaf outside ``s`` until only ``s`` is left."""
    s = _check_subset(g, s)
    require_valid(g, t)
    host = g
    while host.n > len(s):
        x = next(v for v in host.vertices if v not in s and host.degree(v) == 1)
        t = _prune(t, x)
        host = host.remove_vertex(x)
    return t


def project_tree_direct(g: Graph, t: SearchTree, s: Iterable[int]) -> SearchTree:
    """Projection via the components of ``T`` outside ``s``.

    A component touching two kept vertices becomes a single edge between them;
    one touching a single kept vertex is deleted, and if it held the root that
    vertex becomes the root.
    """
    s = _check_subset(g, s)
    require_valid(g, t)
    outside = [v for v in g.vertices if v not in s]
    tree_graph = _as_graph(t)
    parent = {v: p for v, p in t.parent_map().items() if v in s and p in s}
    root = t.root
    for comp in components(tree_graph, outside):
        above = None
        below = []
        for c in comp:
            p = t.parent(c)
            if p is not None and p not in comp:
                above = p
            below.extend(ch for ch in t.children(c) if ch not in comp)
        touching = ([above] if above is not None else []) + below
        if len(touching) > 2 or (above is None and len(below) > 1):
            raise InvalidTreeError(
                f"component {sorted(comp)} touches {len(touching)} kept vertices"
            )
        if above is None:
            root = below[0]
        elif below:
            parent[below[0]] = above
    return SearchTree(root, parent)


def _as_graph(t: SearchTree) -> Graph:
    return graph_on(t.vertices, t.edges())


def project_sequence(seq: Iterable[Rotation], s: Iterable[int]) -> list[Rotation]:
    s = frozenset(s)
    return [(u, v) for u, v in seq if u in s and v in s]


def replay_projected(
    g: Graph, t: SearchTree, seq: Iterable[Rotation], strict: bool = False
) -> tuple[SearchTree, int]:
    """Apply a projected sequence, treating non-parent-child steps as no-ops.

    Returns the final tree and the number of skipped steps. With
    ``strict=True`` a skipped step raises instead.
    """
    skipped = 0
    for i, (u, v) in enumerate(seq):
        if v != t.root and t.parent(v) == u:
            t = rotate_unchecked(g, t, u, v)
        elif strict:
            raise RotationError(f"{v} is not a child of {u}", index=i)
        else:
            skipped += 1
    return t, skipped
