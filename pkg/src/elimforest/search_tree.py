"""Search trees on connected graphs, and their tubing and ranking views.

A search tree picks a root ``r``, then recursively builds one subtree per
connected component of ``G - r``. The subtrees' vertex sets form a maximal
tubing, and ``height - depth + 1`` is a vertex ranking.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence

from .errors import InvalidTreeError
from .graph import Graph, components, is_connected

Tubing = frozenset  # frozenset[frozenset[int]]


class SearchTree:
    """Rooted tree stored as a root plus a parent map on the other vertices.

    Children are unordered; two trees are equal iff they have the same root
    and the same parent map.
    """

    __slots__ = ("root", "_parent", "_key", "_children")

    def __init__(self, root: int, parent: Mapping[int, int]):
        if root in parent:
            raise InvalidTreeError(f"root {root} must not have a parent")
        self.root = root
        self._parent = dict(parent)
        self._key = (root, tuple(sorted(self._parent.items())))
        self._children: dict[int, list[int]] | None = None
        self._check_rooted()

    def _check_rooted(self) -> None:
        verts = self._parent.keys() | {self.root}
        for p in self._parent.values():
            if p not in verts:
                raise InvalidTreeError(f"parent {p} is not a vertex of the tree")
        # Every vertex must reach the root without revisiting anything.
        settled = {self.root}
        for v in self._parent:
            trail = []
            x = v
            while x not in settled:
                if x in trail:
                    raise InvalidTreeError(f"parent map has a cycle through {x}")
                trail.append(x)
                x = self._parent[x]
            settled.update(trail)

    @classmethod
    def _trusted(cls, root: int, parent: dict[int, int]) -> SearchTree:
        """Skip the acyclicity check; callers guarantee a rooted tree."""
        t = cls.__new__(cls)
        t.root = root
        t._parent = parent
        t._key = (root, tuple(sorted(parent.items())))
        t._children = None
        return t

    @classmethod
    def single(cls, v: int) -> SearchTree:
        return cls(v, {})

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._parent) | {self.root}

    @property
    def n(self) -> int:
        return len(self._parent) + 1

    @property
    def key(self) -> tuple:
        """Canonical hashable encoding (root, sorted parent pairs)."""
        return self._key

    def parent(self, v: int) -> int | None:
        if v == self.root:
            return None
        try:
            return self._parent[v]
        except KeyError:
            raise InvalidTreeError(f"vertex {v} not in tree") from None

    def parent_map(self) -> dict[int, int]:
        return dict(self._parent)

    def children_map(self) -> dict[int, list[int]]:
        if self._children is None:
            ch: dict[int, list[int]] = {v: [] for v in self.vertices}
            for v, p in sorted(self._parent.items()):
                ch[p].append(v)
            self._children = ch
        return self._children

    def children(self, v: int) -> list[int]:
        return self.children_map()[v]

    def subtree(self, v: int) -> set[int]:
        """Vertex set of the subtree rooted at ``v``."""
        ch = self.children_map()
        out = {v}
        stack = [v]
        while stack:
            for c in ch[stack.pop()]:
                out.add(c)
                stack.append(c)
        return out

    def depth(self, v: int) -> int:
        d = 0
        while v != self.root:
            v = self.parent(v)
            d += 1
        return d

    def depths(self) -> dict[int, int]:
        ch = self.children_map()
        out = {self.root: 0}
        stack = [self.root]
        while stack:
            x = stack.pop()
            for c in ch[x]:
                out[c] = out[x] + 1
                stack.append(c)
        return out

    def edges(self) -> list[tuple[int, int]]:
        """Tree edges as (parent, child), sorted."""
        return sorted((p, v) for v, p in self._parent.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SearchTree):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"SearchTree(root={self.root}, parent={dict(sorted(self._parent.items()))})"

    def to_json(self) -> dict:
        return {"root": self.root, "parent": {str(v): p for v, p in sorted(self._parent.items())}}

    @classmethod
    def from_json(cls, data: dict) -> SearchTree:
        try:
            root = int(data["root"])
            parent = {int(v): int(p) for v, p in data["parent"].items()}
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise InvalidTreeError(f"malformed search tree JSON: {exc}") from exc
        return cls(root, parent)


def height(t: SearchTree) -> int:
    """Number of vertices on a longest root-to-leaf path."""
    return max(t.depths().values()) + 1


def _check_vertex_set(g: Graph, t: SearchTree) -> None:
    if t.vertices != frozenset(g.vertices):
        raise InvalidTreeError("search tree and graph have different vertex sets")


def validate(g: Graph, t: SearchTree) -> bool:
    """Check the recursive search-tree definition on ``g``.

    Uses the local form: every graph edge joins an ancestor-descendant pair of
    ``t`` (so sibling subtrees are nonadjacent) and every subtree induces a
    connected subgraph.
    """
    _check_vertex_set(g, t)
    depth = t.depths()
    for u, v in g.edges:
        a, b = (u, v) if depth[u] <= depth[v] else (v, u)
        x = b
        while depth[x] > depth[a]:
            x = t.parent(x)
        if x != a:
            return False
    return all(is_connected(g, t.subtree(v)) for v in t.vertices)


def require_valid(g: Graph, t: SearchTree) -> None:
    if not validate(g, t):
        raise InvalidTreeError("not a valid search tree on this graph")


def _build(g: Graph, part: frozenset[int], pick, parent: dict[int, int], above: int | None) -> int:
    r = pick(part)
    if above is not None:
        parent[r] = above
    for comp in components(g, part - {r}):
        _build(g, comp, pick, parent, r)
    return r


def build_recursive(g: Graph, pick) -> SearchTree:
    """Generic builder: ``pick(component)`` chooses the root of each component."""
    if not is_connected(g):
        raise InvalidTreeError("graph must be connected")
    parent: dict[int, int] = {}
    root = _build(g, frozenset(g.vertices), pick, parent, None)
    return SearchTree(root, parent)


def from_elimination_order(g: Graph, order: Sequence[int]) -> SearchTree:
    if sorted(order) != list(g.vertices):
        raise InvalidTreeError("order is not a permutation of the vertex set")
    pos = {v: i for i, v in enumerate(order)}
    return build_recursive(g, lambda part: min(part, key=pos.__getitem__))


def to_tubing(g: Graph, t: SearchTree) -> frozenset[frozenset[int]]:
    require_valid(g, t)
    return frozenset(frozenset(t.subtree(v)) for v in t.vertices)


def tubing_to_json(tb: Iterable[Iterable[int]]) -> list[list[int]]:
    return sorted(sorted(tube) for tube in tb)


def tubing_from_json(data) -> frozenset[frozenset[int]]:
    try:
        return frozenset(frozenset(int(v) for v in tube) for tube in data)
    except (TypeError, ValueError) as exc:
        raise InvalidTreeError(f"malformed tubing JSON: {exc}") from exc


def _compatible(g: Graph, a: frozenset[int], b: frozenset[int]) -> bool:
    if a <= b or b <= a:
        return True
    if a & b:
        return False
    return not any(g.neighbors(x) & b for x in a)


def from_tubing(g: Graph, tb: Iterable[Iterable[int]]) -> SearchTree:
    tubes = sorted({frozenset(x) for x in tb}, key=len)
    full = frozenset(g.vertices)
    if len(tubes) != g.n or not tubes or tubes[-1] != full:
        raise InvalidTreeError(f"not a maximal tubing: need {g.n} tubes including V")
    for tube in tubes:
        if not tube <= full or not is_connected(g, tube):
            raise InvalidTreeError(f"tube {sorted(tube)} is not a connected vertex subset")
    for i, a in enumerate(tubes):
        for b in tubes[i + 1:]:
            if not _compatible(g, a, b):
                raise InvalidTreeError(
                    f"tubes {sorted(a)} and {sorted(b)} are neither nested nor nonadjacent"
                )
    # Each tube's top vertex is the one not covered by a strictly smaller tube.
    top: dict[frozenset[int], int] = {}
    for i, tube in enumerate(tubes):
        covered = set()
        for smaller in tubes[:i]:
            if smaller < tube:
                covered |= smaller
        free = tube - covered
        if len(free) != 1:
            raise InvalidTreeError(f"not a maximal tubing: tube {sorted(tube)} has {len(free)} free vertices")
        top[tube] = next(iter(free))
    parent = {}
    for i, tube in enumerate(tubes[:-1]):
        enclosing = next(b for b in tubes[i + 1:] if tube < b)
        parent[top[tube]] = top[enclosing]
    t = SearchTree(top[full], parent)
    if to_tubing(g, t) != frozenset(tubes):
        raise InvalidTreeError("tubing does not correspond to a search tree")
    return t


def to_ranking(g: Graph, t: SearchTree) -> dict[int, int]:
    """Color each vertex ``height - depth + 1`` (root gets the top color)."""
    require_valid(g, t)
    depth = t.depths()
    h = max(depth.values()) + 1
    return {v: h - depth[v] for v in sorted(depth)}


def from_ranking(g: Graph, colors: Mapping[int, int]) -> SearchTree:
    if set(colors) != set(g.vertices):
        raise InvalidTreeError("ranking must color exactly the graph's vertices")
    if any(int(c) < 1 for c in colors.values()):
        raise InvalidTreeError("ranking colors must be positive integers")

    def pick(part: frozenset[int]) -> int:
        top = max(colors[v] for v in part)
        winners = [v for v in part if colors[v] == top]
        if len(winners) > 1:
            raise InvalidTreeError(
                f"invalid ranking: vertices {sorted(winners)} share the maximum color {top} in one component"
            )
        return winners[0]

    return build_recursive(g, pick)


def ranking_is_valid(g: Graph, colors: Mapping[int, int]) -> bool:
    """Equal colors must be separated by a higher color on every path.

    Checked per vertex: in ``G`` restricted to colors ``<= c(u)``, the
    component of ``u`` holds no other vertex of color ``c(u)``.
    """
    for u in g.vertices:
        c = colors[u]
        low = {v for v in g.vertices if colors[v] <= c}
        comp = next(x for x in components(g, low) if u in x)
        if any(colors[v] == c for v in comp if v != u):
            return False
    return True
