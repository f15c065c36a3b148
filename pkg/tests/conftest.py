import itertools
import random

import pytest

from elimforest.graph import Graph, complete_graph, components, new_graph, path_graph
from elimforest.search_tree import SearchTree


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def k3():
    return complete_graph(3)


@pytest.fixture
def rng():
    return random.Random(12345)


def literal_is_search_tree(g: Graph, t: SearchTree) -> bool:
    """Recursive definition, applied literally: root, then one child per component."""
    if t.vertices != frozenset(g.vertices):
        return False

    def ok(part, r):
        kids = t.children(r)
        comps = components(g, part - {r})
        if len(kids) != len(comps):
            return False
        for c in kids:
            sub = frozenset(t.subtree(c))
            if sub not in comps or not ok(sub, c):
                return False
        return True

    return ok(frozenset(g.vertices), t.root)


def brute_force_search_trees(g: Graph) -> set:
    """Every search tree from every elimination order, deduplicated."""
    out = set()
    for order in itertools.permutations(g.vertices):
        pos = {v: i for i, v in enumerate(order)}
        parent = {}

        def build(part, above):
            r = min(part, key=pos.__getitem__)
            if above is not None:
                parent[r] = above
            for comp in components(g, part - {r}):
                build(comp, r)
            return r

        root = build(frozenset(g.vertices), None)
        out.add(SearchTree(root, parent))
    return out


def star(leaves):
    return new_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
