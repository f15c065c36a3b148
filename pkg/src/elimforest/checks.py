"""Invariant suites over exhaustive and randomized instances.

Each ``check_*`` function returns a :class:`CheckResult`. The parameters
default to the full-size runs; the CLI ``check --quick`` passes smaller ones.
"""

from __future__ import annotations

import math
import random
import time
from collections import defaultdict
from dataclasses import dataclass, field

from .constructions import (
    alternation_number,
    build_gk,
    build_tk,
    build_tk_prime,
    centroid_transform,
    centroid_tree,
    classify_rotation,
    lower_bound_f,
    transform,
    transform_bound,
)
from .errors import CapExceeded
from .graph import (
    Graph,
    complete_graph,
    enumerate_connected_graphs,
    enumerate_labeled_trees,
    new_graph,
    path_graph,
)
from .projection import _prune, project_sequence, project_tree, project_tree_direct, replay_projected
from .rotation import apply_sequence, rotate_unchecked
from .rotation_graph import build_rotation_graph, count_search_trees, distance, enumerate_search_trees
from .search_tree import SearchTree, from_elimination_order, height, validate

# Exact BFS rotation distances between T_k and T'_k, frozen after the first run.
KNOWN_TK_DISTANCES = {1: 0, 2: 2, 3: 8}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        info = ", ".join(f"{k}={v}" for k, v in self.detail.items())
        return f"[{status}] {self.name} ({self.seconds:.1f}s) {info}"

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "seconds": round(self.seconds, 3), **self.detail}


def _timed(name):
    def wrap(fn):
        def run(*args, **kwargs):
            start = time.perf_counter()
            passed, detail = fn(*args, **kwargs)
            return CheckResult(name, passed, detail, time.perf_counter() - start)

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


# -- random instance helpers -------------------------------------------------


def random_tree(rng: random.Random, n: int) -> Graph:
    """Random recursive tree (each vertex attaches to an earlier one), labels shuffled."""
    labels = list(range(n))
    rng.shuffle(labels)
    return new_graph(n, [(labels[i], labels[rng.randrange(i)]) for i in range(1, n)])


def random_search_tree(rng: random.Random, g: Graph) -> SearchTree:
    order = list(g.vertices)
    rng.shuffle(order)
    return from_elimination_order(g, order)


def random_sequence(rng: random.Random, g: Graph, t: SearchTree, length: int):
    seq = []
    for _ in range(length):
        edges = t.edges()
        if not edges:
            break
        u, v = rng.choice(edges)
        seq.append((u, v))
        t = rotate_unchecked(g, t, u, v)
    return seq, t


def random_connected_subset(rng: random.Random, g: Graph) -> set[int]:
    s = {rng.choice(g.vertices)}
    target = rng.randint(1, g.n)
    while len(s) < target:
        s.add(rng.choice(sorted({y for x in s for y in g.neighbors(x)} - s)))
    return s


def _tubing(t: SearchTree) -> frozenset:
    return frozenset(frozenset(t.subtree(v)) for v in t.vertices)


# -- checks ------------------------------------------------------------------


@_timed("correspondence counts")
def check_counts(max_path: int = 7, max_complete: int = 6):
    catalan = {n: math.comb(2 * n, n) // (n + 1) for n in range(1, max_path + 1)}
    paths = {n: len(enumerate_search_trees(path_graph(n))) for n in range(1, max_path + 1)}
    comps = {n: len(enumerate_search_trees(complete_graph(n))) for n in range(2, max_complete + 1)}
    counted = all(count_search_trees(path_graph(n)) == paths[n] for n in paths) and all(
        count_search_trees(complete_graph(n)) == comps[n] for n in comps
    )
    ok = counted and all(paths[n] == catalan[n] for n in paths) and all(
        comps[n] == math.factorial(n) for n in comps
    )
    return ok, {"paths": list(paths.values()), "complete": list(comps.values())}


@_timed("flip characterization")
def check_flips(max_n: int = 5, converse_max_n: int = 5):
    """Every rotation swaps exactly two tubes; conversely two-tube neighbors are one rotation apart."""
    violations = 0
    converse_violations = 0
    graphs = trees_checked = rotations = 0
    for n in range(1, max_n + 1):
        for g in enumerate_connected_graphs(n):
            graphs += 1
            nodes = enumerate_search_trees(g)
            tubings = {t.key: _tubing(t) for t in nodes}
            adjacent = set()
            for t in nodes:
                trees_checked += 1
                for u, v in t.edges():
                    nb = rotate_unchecked(g, t, u, v)
                    rotations += 1
                    if not validate(g, nb) or len(tubings[t.key] ^ tubings[nb.key]) != 2:
                        violations += 1
                    adjacent.add(frozenset((t.key, nb.key)))
            if n > converse_max_n:
                continue
            # Two maximal tubings differ by two tubes iff they share n-1 tubes.
            buckets = defaultdict(list)
            for t in nodes:
                tb = tubings[t.key]
                for tube in tb:
                    buckets[tb - {tube}].append(t.key)
            for keys in buckets.values():
                for i, a in enumerate(keys):
                    for b in keys[i + 1:]:
                        if frozenset((a, b)) not in adjacent:
                            converse_violations += 1
    ok = violations == 0 and converse_violations == 0
    return ok, {
        "graphs": graphs,
        "trees": trees_checked,
        "rotations": rotations,
        "violations": violations,
        "converse_violations": converse_violations,
    }


def _structure_instances(max_n: int):
    for n in range(1, max_n + 1):
        yield from enumerate_labeled_trees(n)
        yield path_graph(n)
        yield complete_graph(n)


@_timed("rotation graph structure")
def check_structure(max_n: int = 6, cache: dict | None = None):
    violations = 0
    graphs = 0
    for g in _structure_instances(max_n):
        rg = _cached_rotation_graph(g, cache)
        graphs += 1
        if not rg.is_connected() or any(d != g.n - 1 for d in rg.degrees()):
            violations += 1
        if len(rg.nodes) != count_search_trees(g):
            violations += 1
    return violations == 0, {"graphs": graphs, "violations": violations}


def _cached_rotation_graph(g: Graph, cache: dict | None):
    if cache is None:
        return build_rotation_graph(g)
    if g not in cache:
        cache[g] = build_rotation_graph(g)
    return cache[g]


@_timed("edge lower bound on diameter")
def check_edge_lower_bound(max_n: int = 6, cache: dict | None = None):
    violations = 0
    trees = 0
    smallest_slack = None
    for n in range(1, max_n + 1):
        for g in enumerate_labeled_trees(n):
            trees += 1
            d = _cached_rotation_graph(g, cache).diameter()
            if d < g.n - 1:
                violations += 1
            slack = d - (g.n - 1)
            smallest_slack = slack if smallest_slack is None else min(smallest_slack, slack)
    return violations == 0, {"trees": trees, "violations": violations, "min_slack": smallest_slack}


@_timed("projection commutes with rotation")
def check_projection(instances: int = 1000, max_n: int = 12, max_len: int = 20, seed: int = 0):
    rng = random.Random(seed)
    violations = skipped = direct_mismatch = 0
    for _ in range(instances):
        n = rng.randint(1, max_n)
        g = random_tree(rng, n)
        t = random_search_tree(rng, g)
        seq, end = random_sequence(rng, g, t, rng.randint(0, max_len))
        s = random_connected_subset(rng, g)
        start = project_tree(g, t, s)
        got, skips = replay_projected(g.induced(s), start, project_sequence(seq, s))
        skipped += skips
        if got != project_tree(g, end, s):
            violations += 1
        if project_tree_direct(g, t, s) != start:
            direct_mismatch += 1
    ok = violations == 0 and direct_mismatch == 0
    return ok, {
        "instances": instances,
        "violations": violations,
        "skipped_steps": skipped,
        "direct_mismatch": direct_mismatch,
    }


@_timed("shelling invariance")
def check_shelling(instances: int = 1000, max_n: int = 12, seed: int = 1):
    rng = random.Random(seed)
    violations = 0
    done = 0
    while done < instances:
        g = random_tree(rng, rng.randint(3, max_n))
        leaves = g.leaves()
        if len(leaves) < 2:
            continue
        x, y = rng.sample(leaves, 2)
        t = random_search_tree(rng, g)
        xy = _prune(_prune(t, x), y)
        yx = _prune(_prune(t, y), x)
        if xy != yx or not validate(g.induced(set(g.vertices) - {x, y}), xy):
            violations += 1
        done += 1
    return violations == 0, {"instances": instances, "violations": violations}


@_timed("alternation accounting")
def check_alternation(pairs_per_k: int = 10_000, ks=(3, 4), max_k: int = 10, seed: int = 2):
    rng = random.Random(seed)
    worst: dict[str, int] = {}
    pairs = 0
    violations = 0
    for k in ks:
        spec = build_gk(k)
        g = spec.graph
        done = 0
        while done < pairs_per_k:
            t = random_search_tree(rng, g)
            t = random_sequence(rng, g, t, rng.randint(0, 3 * g.n))[1]
            before = alternation_number(spec, t)
            for u, v in t.edges():
                cls = classify_rotation(spec, (u, v))
                delta = alternation_number(spec, rotate_unchecked(g, t, u, v)) - before
                worst[cls] = max(worst.get(cls, delta), delta)
                if (cls == "AB" and delta > 2) or (cls in ("AA", "BB") and delta > 0):
                    violations += 1
                done += 1
        pairs += done
    extremes_ok = True
    for k in range(1, max_k + 1):
        spec = build_gk(k)
        if alternation_number(spec, build_tk(spec)) != 0:
            extremes_ok = False
        if alternation_number(spec, build_tk_prime(spec)) != spec.num_leaves - 1:
            extremes_ok = False
    ok = violations == 0 and extremes_ok and pairs >= pairs_per_k * len(ks)
    return ok, {"pairs": pairs, "violations": violations, "max_delta": worst, "extremes_ok": extremes_ok}


@_timed("lower-bound recurrence")
def check_recurrence(attempt_k4: bool = True, k4_max_nodes: int = 10**7, k4_max_seconds: float = 30.0):
    exact = {}
    ok = True
    for k in (2, 3):
        spec = build_gk(k)
        d = distance(spec.graph, build_tk(spec), build_tk_prime(spec))
        exact[k] = d
        ok = ok and d >= lower_bound_f(k) and d == KNOWN_TK_DISTANCES[k]
    detail = {"exact": exact, "f": {k: lower_bound_f(k) for k in (2, 3, 4)}}
    if attempt_k4:
        spec = build_gk(4)
        try:
            d4 = distance(
                spec.graph, build_tk(spec), build_tk_prime(spec),
                max_nodes=k4_max_nodes, max_seconds=k4_max_seconds,
            )
            detail["k4"] = d4
        except CapExceeded as exc:
            detail["k4"] = f"not reached ({exc})"
    return ok, detail


@_timed("centroid upper-bound transform")
def check_transform(instances: int = 100, sizes=(15, 31, 63), seed: int = 3):
    rng = random.Random(seed)
    violations = 0
    longest = {n: 0 for n in sizes}
    for i in range(instances):
        n = sizes[i % len(sizes)]
        g = random_tree(rng, n)
        t1, t2 = random_search_tree(rng, g), random_search_tree(rng, g)
        seq = transform(g, t1, t2)
        limit = math.ceil(math.log2(n + 1))
        mid = apply_sequence(g, t1, centroid_transform(g, t1))
        if apply_sequence(g, t1, seq) != t2 or len(seq) > transform_bound(n):
            violations += 1
        if mid != centroid_tree(g) or height(mid) > limit:
            violations += 1
        longest[n] = max(longest[n], len(seq))
    return violations == 0, {"instances": instances, "violations": violations, "longest": longest}


@_timed("n log n growth")
def check_growth(sizes=(15, 31, 63, 127), samples: int = 10, seed: int = 4):
    """Transform lengths on G_k grow like n log n and the certified lower bound grows with k."""
    rng = random.Random(seed)
    rows = {}
    for n in sizes:
        spec = build_gk((n + 1).bit_length() - 1)
        g = spec.graph
        pair = transform(g, build_tk(spec), build_tk_prime(spec))
        lengths = [len(pair)]
        for _ in range(samples):
            lengths.append(len(transform(g, random_search_tree(rng, g), random_search_tree(rng, g))))
        rows[n] = {
            "f": lower_bound_f(spec.k),
            "tk_pair": len(pair),
            "max_random": max(lengths),
            "ratio": round(max(lengths) / (n * math.log2(n + 1)), 3),
        }
    ns = list(sizes)
    monotone = all(rows[a]["max_random"] < rows[b]["max_random"] for a, b in zip(ns, ns[1:]))
    monotone = monotone and all(rows[a]["f"] < rows[b]["f"] for a, b in zip(ns, ns[1:]))
    sandwiched = all(rows[n]["f"] <= rows[n]["tk_pair"] <= transform_bound(n) for n in ns)
    return monotone and sandwiched, {"rows": rows}


def run_all(quick: bool = False) -> list[CheckResult]:
    cache: dict = {}
    if quick:
        return [
            check_counts(max_path=6, max_complete=5),
            check_flips(max_n=4, converse_max_n=4),
            check_structure(max_n=5, cache=cache),
            check_edge_lower_bound(max_n=5, cache=cache),
            check_projection(instances=100),
            check_shelling(instances=100),
            check_alternation(pairs_per_k=1000, max_k=8),
            check_recurrence(attempt_k4=False),
            check_transform(instances=15),
            check_growth(sizes=(15, 31, 63), samples=3),
        ]
    return [
        check_counts(),
        check_flips(),
        check_structure(cache=cache),
        check_edge_lower_bound(cache=cache),
        check_projection(),
        check_shelling(),
        check_alternation(),
        check_recurrence(),
        check_transform(),
        check_growth(),
    ]
