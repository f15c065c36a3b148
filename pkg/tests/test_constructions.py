import math
import random

import pytest

from elimforest.checks import random_search_tree, random_tree
from elimforest.constructions import (
    alternation_number,
    bit_reversal,
    build_gk,
    build_tk,
    build_tk_prime,
    centroid,
    centroid_transform,
    centroid_tree,
    classify_rotation,
    gk_for_vertex_count,
    lower_bound_f,
    rotate_to_root,
    transform,
    transform_bound,
)
from elimforest.errors import GraphError
from elimforest.graph import components_after_removal, enumerate_labeled_trees, is_tree, path_graph
from elimforest.projection import project_tree
from elimforest.rotation import apply_sequence, rotate
from elimforest.rotation_graph import distance
from elimforest.search_tree import SearchTree, height, validate

from conftest import star


def _reverse_bits(i, bits):
    return int(format(i, f"0{bits}b")[::-1], 2) if bits else 0


@pytest.mark.parametrize(
    "k,expected",
    [
        (1, [0]),
        (2, [0, 1]),
        (3, [0, 2, 1, 3]),
        (4, [0, 4, 2, 6, 1, 5, 3, 7]),
        (5, [0, 8, 4, 12, 2, 10, 6, 14, 1, 9, 5, 13, 3, 11, 7, 15]),
    ],
)
def test_bit_reversal_listed_values(k, expected):
    assert bit_reversal(k) == expected


def test_bit_reversal_is_binary_reversal_and_involution():
    for k in range(1, 13):
        sigma = bit_reversal(k)
        assert sigma == [_reverse_bits(i, k - 1) for i in range(1 << (k - 1))]
        assert [sigma[sigma[i]] for i in range(len(sigma))] == list(range(len(sigma)))
    with pytest.raises(ValueError):
        bit_reversal(0)


def _leaf_interval(spec, v):
    """Leaf labels below v when G_k hangs from its center."""
    g = spec.graph
    seen, stack, labels = {v}, [v], []
    # Walk away from the center: only neighbors farther from the root.
    depth = _graph_depths(spec)
    while stack:
        x = stack.pop()
        if x in spec.leaf_labels and g.degree(x) <= 1:
            labels.append(spec.leaf_labels[x])
        for y in g.neighbors(x):
            if y not in seen and depth[y] > depth[x]:
                seen.add(y)
                stack.append(y)
    return sorted(labels)


def _graph_depths(spec):
    depth = {spec.root: 0}
    stack = [spec.root]
    while stack:
        x = stack.pop()
        for y in spec.graph.neighbors(x):
            if y not in depth:
                depth[y] = depth[x] + 1
                stack.append(y)
    return depth


def test_gk_small():
    g1 = build_gk(1)
    assert g1.n == 1 and g1.root == 0 and g1.leaf_labels == {0: 0}
    assert not g1.a and not g1.b
    g2 = build_gk(2)
    assert g2.graph.edges == ((0, 2), (1, 2))
    assert g2.root == 2 and g2.a == {0} and g2.b == {1}
    g4 = build_gk(4)
    assert g4.n == 15 and sorted(g4.leaf_labels.values()) == list(range(8))
    with pytest.raises(ValueError):
        build_gk(0)


@pytest.mark.parametrize("k", range(2, 9))
def test_gk_invariants(k):
    spec = build_gk(k)
    g = spec.graph
    half = spec.num_leaves // 2
    assert g.n == (1 << k) - 1 and is_tree(g)
    assert spec.a | spec.b | {spec.root} == set(g.vertices)
    assert sorted(components_after_removal(g, spec.root), key=min) == sorted([spec.a, spec.b], key=min)
    assert len(spec.a) == len(spec.b) == (1 << (k - 1)) - 1
    assert all(spec.leaf_labels[v] < half for v in spec.a if v in spec.leaf_labels)
    assert all(spec.leaf_labels[v] >= half for v in spec.b if v in spec.leaf_labels)
    assert [v for v in g.vertices if g.degree(v) == 1] == sorted(spec.leaf_labels)
    # Inorder labeling of some plane embedding: every subtree holds a label interval.
    for v in g.vertices:
        labels = _leaf_interval(spec, v)
        assert labels == list(range(labels[0], labels[-1] + 1))
    # Internal ids follow breadth-first order from the center.
    depth = _graph_depths(spec)
    internal = [v for v in g.vertices if v not in spec.leaf_labels]
    assert internal[0] == spec.root
    assert [depth[v] for v in internal] == sorted(depth[v] for v in internal)


def test_gk_for_vertex_count():
    assert gk_for_vertex_count(15).k == 4
    with pytest.raises(GraphError):
        gk_for_vertex_count(14)


def test_tk_small():
    assert build_tk(build_gk(1)) == SearchTree.single(0)
    spec = build_gk(2)
    assert build_tk(spec) == SearchTree(2, {0: 2, 1: 2})


def test_tk_prime_small():
    assert build_tk_prime(build_gk(1)) == SearchTree.single(0)
    # leaf 0 -> leaf 1 -> center
    assert build_tk_prime(build_gk(2)) == SearchTree(0, {1: 0, 2: 1})


def test_tk4_and_tk4_prime():
    spec = build_gk(4)
    t = build_tk(spec)
    assert sorted(t.edges()) == sorted(tuple(sorted(e, key=lambda v: _graph_depths(spec)[v])) for e in spec.graph.edges)
    tp = build_tk_prime(spec)
    chain = [tp.root]
    while chain[-1] in spec.leaf_labels:
        (nxt,) = tp.children(chain[-1])
        chain.append(nxt)
    assert [spec.leaf_labels[v] for v in chain[:-1]] == [0, 4, 2, 6, 1, 5, 3, 7]
    assert chain[-1] == spec.root
    # Below the last leaf, the internal vertices keep the T_4 shape.
    internal = [v for v in spec.graph.vertices if v not in spec.leaf_labels]
    for v in internal:
        if v != spec.root:
            assert tp.parent(v) == t.parent(v)


@pytest.mark.parametrize("k", range(1, 11))
def test_tk_trees_valid_with_extreme_alternation(k):
    spec = build_gk(k)
    t, tp = build_tk(spec), build_tk_prime(spec)
    assert validate(spec.graph, t) and validate(spec.graph, tp)
    assert alternation_number(spec, t) == 0
    assert alternation_number(spec, tp) == spec.num_leaves - 1


def _to_smaller(spec, small, side):
    """Bijection from A (or B) of G_k onto G_{k-1} matching leaf-label intervals."""
    shift = 0 if side is spec.a else spec.num_leaves // 2
    by_interval = {tuple(_leaf_interval(small, v)): v for v in small.graph.vertices}
    return {v: by_interval[tuple(x - shift for x in _leaf_interval(spec, v))] for v in side}


@pytest.mark.parametrize("k", [3, 4, 5])
def test_projection_onto_half_is_previous_pair(k):
    spec, small = build_gk(k), build_gk(k - 1)
    for side in (spec.a, spec.b):
        phi = _to_smaller(spec, small, side)
        for big, little in ((build_tk(spec), build_tk(small)), (build_tk_prime(spec), build_tk_prime(small))):
            p = project_tree(spec.graph, big, side)
            mapped = SearchTree(phi[p.root], {phi[v]: phi[q] for v, q in p.parent_map().items()})
            assert mapped == little


def test_alternation_examples():
    spec = build_gk(3)
    assert alternation_number(spec, build_tk(spec)) == 0
    assert alternation_number(spec, build_tk_prime(spec)) == 3


def test_classify_rotation():
    spec = build_gk(3)
    a_leaf, a_mid = 0, 5
    assert classify_rotation(spec, (a_mid, a_leaf)) == "AA"
    assert classify_rotation(spec, (6, 3)) == "BB"
    assert classify_rotation(spec, (spec.root, 5)) == "R"
    assert classify_rotation(spec, (0, 3)) == "AB"


def test_rotation_at_center_can_raise_alternation():
    spec = build_gk(2)
    g = spec.graph
    t = SearchTree(0, {2: 0, 1: 2})  # 0 -> r -> 1
    assert alternation_number(spec, t) == 0
    out = rotate(g, t, 2, 1)
    assert classify_rotation(spec, (2, 1)) == "R"
    assert alternation_number(spec, out) == 1
    # T_2 -> T'_2 in two rotations, neither of them an AB-rotation.
    seq = [(2, 0), (2, 1)]
    assert apply_sequence(g, build_tk(spec), seq) == build_tk_prime(spec)
    assert [classify_rotation(spec, r) for r in seq] == ["R", "R"]


def test_lower_bound_f():
    assert [lower_bound_f(k) for k in (1, 2, 3, 4)] == [0, 1, 4, 12]
    for k in range(2, 20):
        assert lower_bound_f(k) == (k - 1) * 2 ** (k - 2)
        assert lower_bound_f(k) == 2 * lower_bound_f(k - 1) + 2 ** (k - 2)


def test_centroid_examples(p3):
    assert centroid(path_graph(1)) == 0
    assert centroid(p3) == 1
    assert centroid(star(4)) == 0
    assert centroid(path_graph(4)) == 1  # two centroids, smallest id wins


def test_centroid_brute_force():
    for n in range(1, 7):
        for g in enumerate_labeled_trees(n):
            good = [v for v in g.vertices if max(map(len, components_after_removal(g, v)), default=0) <= n / 2]
            assert centroid(g) == min(good)


def test_rotate_to_root(p3):
    chain = SearchTree(0, {1: 0, 2: 1})
    assert rotate_to_root(p3, chain, 0) == []
    seq = rotate_to_root(p3, chain, 2)
    assert len(seq) == 2
    assert apply_sequence(p3, chain, seq).root == 2
    rng = random.Random(5)
    for _ in range(50):
        g = random_tree(rng, rng.randint(1, 15))
        t = random_search_tree(rng, g)
        v = rng.choice(g.vertices)
        seq = rotate_to_root(g, t, v)
        assert len(seq) == t.depth(v)
        assert apply_sequence(g, t, seq).root == v


def test_centroid_transform_examples(p3):
    assert centroid_transform(p3, SearchTree(1, {0: 1, 2: 1})) == []
    chain = SearchTree(0, {1: 0, 2: 1})
    seq = centroid_transform(p3, chain)
    assert len(seq) <= 2
    assert apply_sequence(p3, chain, seq) == SearchTree(1, {0: 1, 2: 1})


def test_centroid_transform_large():
    rng = random.Random(6)
    for _ in range(5):
        g = random_tree(rng, 63)
        t = random_search_tree(rng, g)
        seq = centroid_transform(g, t)
        end = apply_sequence(g, t, seq)
        assert end == centroid_tree(g)
        assert height(end) <= 6
        assert len(seq) <= 63 * 6


def test_transform_small_pairs():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 10)
        g = random_tree(rng, n)
        t1, t2 = random_search_tree(rng, g), random_search_tree(rng, g)
        seq = transform(g, t1, t2)
        assert apply_sequence(g, t1, seq) == t2
        assert len(seq) <= transform_bound(n)
        assert len(seq) >= distance(g, t1, t2)
    t = random_search_tree(rng, g)
    assert apply_sequence(g, t, transform(g, t, t)) == t


def test_transform_on_g3():
    spec = build_gk(3)
    seq = transform(spec.graph, build_tk(spec), build_tk_prime(spec))
    assert apply_sequence(spec.graph, build_tk(spec), seq) == build_tk_prime(spec)
    assert len(seq) >= lower_bound_f(3)
    assert len(seq) >= distance(spec.graph, build_tk(spec), build_tk_prime(spec))


def test_transform_needs_tree(k3):
    with pytest.raises(GraphError):
        transform(k3, SearchTree(0, {1: 0, 2: 1}), SearchTree(0, {1: 0, 2: 1}))
    assert transform_bound(15) == 2 * 15 * math.ceil(math.log2(16))
