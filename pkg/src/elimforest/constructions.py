"""Lower-bound instances on complete binary trees and the centroid transform.

Vertex ids on ``G_k``: the ``l = 2**(k-1)`` leaves get ``0..l-1`` in inorder,
internal vertices get ``l..n-1`` in breadth-first order from the root. In heap
numbering (root 1, children ``2h`` and ``2h+1``) that is: leaf ``h`` has id
``h - l`` and internal ``h`` has id ``l + h - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import GraphError
from .graph import Graph, components, components_after_removal, is_tree, new_graph
from .rotation import Rotation, apply_sequence, invert_sequence, rotate_unchecked
from .search_tree import SearchTree, build_recursive, require_valid


def bit_reversal(k: int) -> list[int]:
    """Bit-reversal permutation of ``{0, ..., 2**(k-1) - 1}``."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    sigma = [0]
    for _ in range(k - 1):
        sigma = [2 * x for x in sigma] + [2 * x + 1 for x in sigma]
    return sigma


@dataclass(frozen=True)
class GkSpec:
    k: int
    graph: Graph
    root: int
    a: frozenset[int]
    b: frozenset[int]
    leaf_labels: dict[int, int]  # leaf vertex id -> inorder label

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def num_leaves(self) -> int:
        return 1 << (self.k - 1)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "graph": self.graph.to_json(),
            "root": self.root,
            "A": sorted(self.a),
            "B": sorted(self.b),
            "leaf_labels": {str(v): lab for v, lab in sorted(self.leaf_labels.items())},
        }


def _heap_id(h: int, leaves: int) -> int:
    return h - leaves if h >= leaves else leaves + h - 1


def _heap_subtree(h: int, n: int) -> list[int]:
    out, stack = [], [h]
    while stack:
        x = stack.pop()
        if x <= n:
            out.append(x)
            stack.extend((2 * x, 2 * x + 1))
    return out


def build_gk(k: int) -> GkSpec:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = (1 << k) - 1
    leaves = 1 << (k - 1)
    edges = [(_heap_id(h // 2, leaves), _heap_id(h, leaves)) for h in range(2, n + 1)]
    g = new_graph(n, edges)
    a = frozenset(_heap_id(h, leaves) for h in _heap_subtree(2, n))
    b = frozenset(_heap_id(h, leaves) for h in _heap_subtree(3, n))
    return GkSpec(k, g, _heap_id(1, leaves), a, b, {i: i for i in range(leaves)})


def gk_for_vertex_count(n: int) -> GkSpec:
    k = (n + 1).bit_length() - 1
    if n < 1 or (1 << k) - 1 != n:
        raise GraphError(f"n must be of the form 2**k - 1, got {n}")
    return build_gk(k)


def _heap_parents(k: int, internal_only: bool = False) -> dict[int, int]:
    n = (1 << k) - 1
    leaves = 1 << (k - 1)
    top = leaves - 1 if internal_only else n
    return {_heap_id(h, leaves): _heap_id(h // 2, leaves) for h in range(2, top + 1)}


def build_tk(spec: GkSpec) -> SearchTree:
    """Search tree with the same shape as ``G_k``, rooted at its center."""
    return SearchTree(spec.root, _heap_parents(spec.k))


def build_tk_prime(spec: GkSpec) -> SearchTree:
    """Chain of leaves in bit-reversal order, ending on ``T_{k-1}``-shaped internals."""
    if spec.k == 1:
        return SearchTree.single(spec.root)
    label_to_leaf = {lab: v for v, lab in spec.leaf_labels.items()}
    chain = [label_to_leaf[lab] for lab in bit_reversal(spec.k)]
    parent = _heap_parents(spec.k, internal_only=True)
    for above, below in zip(chain, chain[1:]):
        parent[below] = above
    parent[spec.root] = chain[-1]
    return SearchTree(chain[0], parent)


def alternation_number(spec: GkSpec, t: SearchTree) -> int:
    """Max number of A-B edges on a root-to-leaf path of ``t``."""
    def side(v: int) -> int:
        return 1 if v in spec.a else 2 if v in spec.b else 0

    count = {t.root: 0}
    stack = [t.root]
    ch = t.children_map()
    while stack:
        x = stack.pop()
        for c in ch[x]:
            sx, sc = side(x), side(c)
            count[c] = count[x] + (1 if sx and sc and sx != sc else 0)
            stack.append(c)
    return max(count[v] for v in t.vertices if not ch[v])


def classify_rotation(spec: GkSpec, rot: Rotation) -> str:
    u, v = rot
    if spec.root in (u, v):
        return "R"
    if u in spec.a and v in spec.a:
        return "AA"
    if u in spec.b and v in spec.b:
        return "BB"
    return "AB"


def lower_bound_f(k: int) -> int:
    """``f(1) = 0``, ``f(k) = 2 f(k-1) + 2**(k-2)``."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    f = 0
    for j in range(2, k + 1):
        f = 2 * f + (1 << (j - 2))
    return f


def centroid(g: Graph) -> int:
    """Smallest-id vertex whose removal leaves components of size <= n/2."""
    if not is_tree(g):
        raise GraphError("centroid needs a tree")
    for v in g.vertices:
        if all(2 * len(c) <= g.n for c in components_after_removal(g, v)):
            return v
    raise AssertionError("every tree has a centroid")


def centroid_tree(g: Graph) -> SearchTree:
    """Search tree of the recursive centroid decomposition."""
    if not is_tree(g):
        raise GraphError("centroid decomposition needs a tree")
    return build_recursive(g, lambda part: centroid(g.induced(part)))


def rotate_to_root(g: Graph, t: SearchTree, v: int) -> list[Rotation]:
    """Rotations ``(parent(v), v)`` lifting ``v`` to the root."""
    require_valid(g, t)
    seq = []
    while v != t.root:
        u = t.parent(v)
        seq.append((u, v))
        t = rotate_unchecked(g, t, u, v)
    return seq


def centroid_transform(g: Graph, t: SearchTree) -> list[Rotation]:
    """Rotations turning ``t`` into ``centroid_tree(g)``.

    Lift the centroid of each part to the top of that part's subtree, then
    recurse into the components below it.
    """
    if not is_tree(g):
        raise GraphError("centroid transform needs a tree")
    require_valid(g, t)
    seq: list[Rotation] = []
    work = [frozenset(g.vertices)]
    while work:
        part = work.pop()
        c = centroid(g.induced(part))
        while t.parent(c) is not None and t.parent(c) in part:
            u = t.parent(c)
            seq.append((u, c))
            t = rotate_unchecked(g, t, u, c)
        work.extend(reversed(components(g, part - {c})))
    return seq


def transform(g: Graph, t1: SearchTree, t2: SearchTree) -> list[Rotation]:
    """Rotations from ``t1`` to ``t2`` through the centroid tree."""
    return centroid_transform(g, t1) + invert_sequence(centroid_transform(g, t2))


def transform_bound(n: int) -> int:
    return 2 * n * math.ceil(math.log2(n + 1))


def transform_report(g: Graph, t1: SearchTree, t2: SearchTree) -> dict:
    seq = transform(g, t1, t2)
    reached = apply_sequence(g, t1, seq) == t2
    return {
        "sequence": [[u, v] for u, v in seq],
        "length": len(seq),
        "upper_bound": transform_bound(g.n),
        "reaches_target": reached,
    }
