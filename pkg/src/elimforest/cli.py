"""Command-line entry point.

JSON goes to stdout, diagnostics to stderr. Exit status: 0 on success, 1 on a
domain error or malformed input, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import constructions as cons
from .checks import run_all
from .errors import ElimForestError
from .graph import Graph
from .projection import project_sequence, project_tree
from .rotation import apply_sequence, rotate, sequence_from_json, sequence_to_json
from .rotation_graph import (
    DEFAULT_MAX_NODES,
    build_rotation_graph,
    count_search_trees,
    distance,
    enumerate_search_trees,
)
from .search_tree import SearchTree, height, to_tubing, tubing_to_json, validate


class InputError(Exception):
    pass


def _load(arg: str):
    """Read JSON from a file path, ``-`` for stdin, or an inline literal."""
    if arg == "-":
        text, source = sys.stdin.read(), "<stdin>"
    elif arg.lstrip()[:1] in ("{", "["):
        text, source = arg, "<inline>"
    else:
        try:
            text, source = Path(arg).read_text(), arg
        except OSError as exc:
            raise InputError(f"cannot read {arg}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"malformed JSON in {source}: {exc.msg} at line {exc.lineno} column {exc.colno} (char {exc.pos})"
        ) from None


def _graph(arg: str) -> Graph:
    data = _load(arg)
    # Accept the GkSpec emitted by `construct --what gk` as well.
    if isinstance(data, dict) and "graph" in data:
        data = data["graph"]
    return Graph.from_json(data)


def _tree(arg: str) -> SearchTree:
    return SearchTree.from_json(_load(arg))


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=False) + "\n")


def cmd_construct(args) -> None:
    if args.what == "sigma":
        _emit(cons.bit_reversal(args.k))
        return
    spec = cons.build_gk(args.k)
    if args.what == "gk":
        _emit(spec.to_json())
    elif args.what == "tk":
        _emit(cons.build_tk(spec).to_json())
    else:
        _emit(cons.build_tk_prime(spec).to_json())


def cmd_validate(args) -> None:
    g, t = _graph(args.graph), _tree(args.tree)
    ok = validate(g, t)
    out = {"valid": ok}
    if ok:
        out["height"] = height(t)
        out["tubing"] = tubing_to_json(to_tubing(g, t))
    _emit(out)


def cmd_rotate(args) -> None:
    _emit(rotate(_graph(args.graph), _tree(args.tree), args.u, args.v).to_json())


def cmd_apply(args) -> None:
    seq = sequence_from_json(_load(args.sequence))
    _emit(apply_sequence(_graph(args.graph), _tree(args.tree), seq).to_json())


def cmd_project(args) -> None:
    subset = [int(v) for v in _load(args.subset)]
    if args.sequence is not None:
        _emit(sequence_to_json(project_sequence(sequence_from_json(_load(args.sequence)), subset)))
        return
    if args.graph is None or args.tree is None:
        raise InputError("project needs --graph and --tree, or --sequence")
    _emit(project_tree(_graph(args.graph), _tree(args.tree), subset).to_json())


def cmd_enumerate(args) -> None:
    g = _graph(args.graph)
    if args.count_only:
        _emit({"count": count_search_trees(g, args.max_nodes)})
    elif args.format == "dot":
        sys.stdout.write(build_rotation_graph(g, args.max_nodes).to_dot(labels=args.labels))
    else:
        _emit([t.to_json() for t in enumerate_search_trees(g, args.max_nodes)])


def cmd_distance(args) -> None:
    g = _graph(args.graph)
    d = distance(g, _tree(args.source), _tree(args.target), args.max_nodes, args.max_seconds)
    _emit({"distance": d})


def cmd_diameter(args) -> None:
    rg = build_rotation_graph(_graph(args.graph), args.max_nodes)
    if args.format == "dot":
        sys.stdout.write(rg.to_dot(labels=args.labels))
    else:
        _emit(rg.stats())


def cmd_transform(args) -> None:
    g = _graph(args.graph)
    t1, t2 = _tree(args.source), _tree(args.target)
    report = cons.transform_report(g, t1, t2)
    mid = apply_sequence(g, t1, cons.centroid_transform(g, t1))
    report["centroid_height"] = height(mid)
    try:
        report["lower_bound_f"] = cons.lower_bound_f(cons.gk_for_vertex_count(g.n).k)
    except ElimForestError:
        pass
    _emit(report)


def cmd_check(args) -> int:
    results = run_all(quick=args.quick)
    for r in results:
        print(r.line(), file=sys.stderr)
    _emit([r.to_json() for r in results])
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    env_cap = os.environ.get("EF_MAX_NODES")
    default_cap = int(env_cap) if env_cap else DEFAULT_MAX_NODES

    parser = argparse.ArgumentParser(prog="elimforest", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def caps(p):
        p.add_argument("--max-nodes", type=int, default=default_cap,
                       help="node cap (default: $EF_MAX_NODES or %(default)s)")
        p.add_argument("--max-seconds", type=float, default=None)

    p = sub.add_parser("construct", help="bit-reversal permutation, G_k, T_k or T'_k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--what", choices=["gk", "tk", "tk-prime", "sigma"], required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("validate", help="check a search tree against a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--tree", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("rotate", help="apply one rotation (u parent, v child)")
    p.add_argument("--graph", required=True)
    p.add_argument("--tree", required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.set_defaults(func=cmd_rotate)

    p = sub.add_parser("apply", help="apply a rotation sequence")
    p.add_argument("--graph", required=True)
    p.add_argument("--tree", required=True)
    p.add_argument("--sequence", required=True)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("project", help="project a search tree or a rotation sequence onto a subset")
    p.add_argument("--graph")
    p.add_argument("--tree")
    p.add_argument("--sequence")
    p.add_argument("--subset", required=True)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("enumerate", help="all search trees, their count, or the rotation graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--labels", action="store_true", help="label DOT nodes with serialized trees")
    caps(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("distance", help="exact rotation distance (bidirectional BFS)")
    p.add_argument("--graph", required=True)
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    caps(p)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("diameter", help="rotation graph stats and diameter")
    p.add_argument("--graph", required=True)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--labels", action="store_true")
    caps(p)
    p.set_defaults(func=cmd_diameter)

    p = sub.add_parser("transform", help="rotation sequence through the centroid tree")
    p.add_argument("--graph", required=True)
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("check", help="run the invariant suites")
    p.add_argument("--quick", action="store_true", help="smaller instance sizes")
    p.set_defaults(func=cmd_check)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        status = args.func(args)
    except (InputError, ElimForestError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return status or 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
