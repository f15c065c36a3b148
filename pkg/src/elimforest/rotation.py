"""Rotations on search trees and rotation sequences.

A rotation on ``(u, v)`` requires ``v`` to be a child of ``u``. Afterwards
``v`` sits where ``u`` was and ``u`` hangs below ``v``; each subtree of ``v``
moves under ``u`` exactly when ``u`` has a graph neighbor inside it.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import RotationError
from .graph import Graph
from .search_tree import SearchTree, require_valid, to_tubing

Rotation = tuple[int, int]


def rotatable_pairs(g: Graph, t: SearchTree) -> list[Rotation]:
    require_valid(g, t)
    return t.edges()


def rotate_unchecked(g: Graph, t: SearchTree, u: int, v: int) -> SearchTree:
    """Rotate without re-validating ``t``; only applicability is checked."""
    if v == t.root or t.parent(v) != u:
        raise RotationError(f"{v} is not a child of {u}")
    parent = t.parent_map()
    p = parent.get(u)
    if p is None:
        root = v
        del parent[v]
    else:
        root = t.root
        parent[v] = p
    parent[u] = v
    nbrs = g.neighbors(u)
    for c in t.children(v):
        if not nbrs.isdisjoint(t.subtree(c)):
            parent[c] = u
    return SearchTree._trusted(root, parent)


def rotate(g: Graph, t: SearchTree, u: int, v: int) -> SearchTree:
    require_valid(g, t)
    return rotate_unchecked(g, t, u, v)


def neighbors_in_rotation_graph(g: Graph, t: SearchTree) -> list[SearchTree]:
    return [rotate_unchecked(g, t, u, v) for u, v in t.edges()]


def apply_sequence(g: Graph, t: SearchTree, seq: Iterable[Rotation]) -> SearchTree:
    require_valid(g, t)
    for i, (u, v) in enumerate(seq):
        try:
            t = rotate_unchecked(g, t, u, v)
        except RotationError as exc:
            raise RotationError(str(exc), index=i) from None
    return t


def invert_sequence(seq: Sequence[Rotation]) -> list[Rotation]:
    return [(v, u) for u, v in reversed(seq)]


def tubing_difference(g: Graph, t1: SearchTree, t2: SearchTree) -> int:
    return len(to_tubing(g, t1) ^ to_tubing(g, t2))


def sequence_to_json(seq: Iterable[Rotation]) -> list[list[int]]:
    return [[u, v] for u, v in seq]


def sequence_from_json(data) -> list[Rotation]:
    try:
        out = []
        for step in data:
            u, v = step
            out.append((int(u), int(v)))
        return out
    except (TypeError, ValueError) as exc:
        raise RotationError(f"malformed rotation sequence JSON: {exc}") from exc
