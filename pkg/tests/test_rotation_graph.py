import math

import pytest

from elimforest.checks import random_search_tree, random_tree
from elimforest.constructions import build_gk, build_tk, build_tk_prime, lower_bound_f, transform
from elimforest.errors import CapExceeded
from elimforest.graph import complete_graph, enumerate_labeled_trees, new_graph, path_graph
from elimforest.rotation import rotate
from elimforest.rotation_graph import (
    build_rotation_graph,
    count_search_trees,
    diameter,
    distance,
    enumerate_search_trees,
)
from elimforest.search_tree import SearchTree, validate

from conftest import brute_force_search_trees, star


def test_enumerate_examples(p3, k3):
    assert enumerate_search_trees(new_graph(1, [])) == [SearchTree.single(0)]
    assert set(enumerate_search_trees(p3)) == brute_force_search_trees(p3)
    assert len(enumerate_search_trees(p3)) == 5
    assert len(enumerate_search_trees(k3)) == 6


def test_enumeration_matches_brute_force():
    graphs = enumerate_labeled_trees(5)[::11] + [star(4), path_graph(6), new_graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)])]
    for g in graphs:
        trees = enumerate_search_trees(g)
        assert len(trees) == len(set(trees)) == count_search_trees(g)
        assert set(trees) == brute_force_search_trees(g)
        assert all(validate(g, t) for t in trees)
        assert [t.key for t in trees] == sorted(t.key for t in trees)


def test_counts():
    assert count_search_trees(path_graph(4)) == 14
    assert count_search_trees(complete_graph(4)) == 24
    assert count_search_trees(star(3)) == len(brute_force_search_trees(star(3))) == 16


def test_caps():
    with pytest.raises(CapExceeded) as err:
        enumerate_search_trees(complete_graph(5), max_nodes=100)
    assert err.value.partial == 120
    spec = build_gk(4)
    with pytest.raises(CapExceeded):
        distance(spec.graph, build_tk(spec), build_tk_prime(spec), max_nodes=2000)


def test_env_cap(monkeypatch):
    monkeypatch.setenv("EF_MAX_NODES", "10")
    with pytest.raises(CapExceeded):
        enumerate_search_trees(complete_graph(4))


def test_rotation_graph_small(p3, k3):
    single = build_rotation_graph(new_graph(1, []))
    assert single.stats() == {"nodes": 1, "edges": 0, "diameter": 0}
    pent = build_rotation_graph(p3)
    assert pent.stats() == {"nodes": 5, "edges": 5, "diameter": 2}
    assert pent.degrees() == [2] * 5
    hexagon = build_rotation_graph(k3)
    assert hexagon.stats() == {"nodes": 6, "edges": 6, "diameter": 3}


def test_edges_from_both_endpoints():
    g = new_graph(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    rg = build_rotation_graph(g)
    assert len(rg.edges) * 2 == sum(rg.degrees()) == len(rg.nodes) * (g.n - 1)
    assert len(set(rg.edges)) == len(rg.edges)


def test_scipy_diameter_matches_plain_bfs():
    for g in [path_graph(5), complete_graph(4), star(4)] + enumerate_labeled_trees(5)[::17]:
        rg = build_rotation_graph(g)
        assert rg.diameter() == rg.diameter_bfs()


@pytest.mark.parametrize("n,expected", [(1, 0), (2, 1), (3, 2), (4, 4), (5, 5), (6, 7)])
def test_path_diameters(n, expected):
    # Known flip-graph diameters of polygon triangulations (OEIS A005152).
    assert diameter(path_graph(n)) == expected


def test_complete_graph_diameter_is_inversions():
    for n in range(1, 6):
        assert diameter(complete_graph(n)) == n * (n - 1) // 2


def test_distance_matches_full_bfs():
    for g in [path_graph(5), star(4), new_graph(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)])]:
        rg = build_rotation_graph(g)
        dist0 = rg.bfs(0)
        for j in range(0, len(rg.nodes), 3):
            assert distance(g, rg.nodes[0], rg.nodes[j]) == dist0[j]


def test_distance_examples(p3):
    t = SearchTree(0, {1: 0, 2: 1})
    assert distance(p3, t, t) == 0
    assert distance(p3, t, rotate(p3, t, 0, 1)) == 1
    spec = build_gk(2)
    assert distance(spec.graph, build_tk(spec), build_tk_prime(spec)) >= lower_bound_f(2)


def test_small_tree_diameters_exceed_edge_count():
    for n in range(1, 6):
        for g in enumerate_labeled_trees(n):
            assert diameter(g) >= n - 1


def test_distance_never_exceeds_transform(rng):
    for _ in range(20):
        g = random_tree(rng, rng.randint(2, 7))
        t1, t2 = random_search_tree(rng, g), random_search_tree(rng, g)
        assert distance(g, t1, t2) <= len(transform(g, t1, t2))


def test_dot_export(p3):
    rg = build_rotation_graph(p3)
    dot = rg.to_dot()
    assert dot.startswith("graph rotation_graph {")
    assert dot.count("--") == 5
    assert "r=1" in rg.to_dot(labels=True)
