"""Command-line entry point: ``zonolat <verb> ...``.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import linear, partitions, poset, structure, zonotopes
from .errors import ZonolatError
from .poset import Dag
from .zonotopes import Tiling, ZonotopeSpec


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _load_json(arg: str):
    try:
        return json.loads(Path(arg).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {arg}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{arg} is not valid JSON: {exc}") from None


def _int_list(text: str) -> tuple[int, ...]:
    """``"1,0,2"`` or a JSON file holding ``{"parts": [...]}`` or a bare list."""
    if Path(text).is_file():
        data = _load_json(text)
        data = data["parts"] if isinstance(data, dict) else data
        return tuple(int(x) for x in data)
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


# ---------------------------------------------------------------------------
# partitions


def _problem(args) -> partitions.PartitionProblem:
    if args.problem:
        return partitions.PartitionProblem.from_json(_load_json(args.problem))
    if not args.dag:
        raise UsageError("give --problem or --dag")
    if args.height is None:
        raise UsageError("--dag needs --height")
    h = None if args.height == "inf" else int(args.height)
    return partitions.PartitionProblem(Dag.from_json(_load_json(args.dag)), h)


def cmd_partitions(args) -> None:
    problem = _problem(args)
    if args.action in ("meet", "join"):
        if args.a is None or args.b is None:
            raise UsageError(f"{args.action} needs --a and --b")
        op = partitions.meet if args.action == "meet" else partitions.join
        print(_dump({"parts": list(op(problem, _int_list(args.a), _int_list(args.b)))}))
        return
    order = partitions.enumerate_partitions(problem, max_elements=args.max_elements)
    if args.count:
        print(len(order))
    elif args.action == "lattice-dot" or args.format == "dot":
        label = lambda p: ",".join(map(str, p))  # noqa: E731
        print(poset.hasse_dot(order, name="partitions", label=label), end="")
    else:
        print(_dump({"count": len(order), "partitions": [list(p) for p in order.elements]}))


# ---------------------------------------------------------------------------
# linear models


def cmd_linear(args) -> None:
    labels = {} if args.labels else None
    order = linear.generate(args.n, args.verb, max_n=args.max_n, labels=labels)
    if args.count:
        print(len(order))
    elif args.format == "dot":
        label = lambda p: "".join(map(str, p)) if max(p) < 10 else ",".join(map(str, p))  # noqa: E731
        edges = None
        if labels is not None:
            edges = {(order.index[lo], order.index[hi]): str(col) for (lo, hi), col in labels.items()}
        print(poset.hasse_dot(order, name=args.verb, label=label, edge_labels=edges), end="")
    else:
        out = {"count": len(order), "elements": [list(p) for p in order.elements]}
        out["covers"] = [[list(order.elements[i]), list(order.elements[j])] for i, j in order.covers]
        if labels is not None:
            out["labels"] = [[list(lo), list(hi), col] for (lo, hi), col in sorted(labels.items())]
        print(_dump(out))


def cmd_pi(args) -> None:
    a = linear.normalize(_int_list(args.a))
    out = {"pi": list(linear.pi_embedding(a))}
    if args.b is not None:
        b = linear.normalize(_int_list(args.b))
        out["pi_b"] = list(linear.pi_embedding(b))
        out["suffix_inf"] = list(linear.suffix_inf(a, b))
        if sum(a) == sum(b):
            out["dominance_leq"] = linear.dominance_leq(a, b)
            out["meet"] = list(linear.lb_meet(a, b))
    print(_dump(out))


# ---------------------------------------------------------------------------
# tilings


def _spec(args) -> ZonotopeSpec:
    if not args.multiplicities:
        raise UsageError("--multiplicities is required")
    return ZonotopeSpec(_int_list(args.multiplicities))


def _tiling(args, spec: ZonotopeSpec | None = None, which: str | None = None) -> Tiling:
    """A tiling from ``--tiling FILE`` or the bottom/top extreme of ``--multiplicities``."""
    which = which or getattr(args, "tiling", None)
    if which in (None, "bottom", "empty"):
        return zonotopes.extreme_tiling(spec or _spec(args))
    if which in ("top", "full"):
        return zonotopes.extreme_tiling(spec or _spec(args), top=True)
    t = Tiling.from_json(_load_json(which))
    return zonotopes.require_valid(t)


def cmd_tilings(args) -> None:
    if args.action in ("count", "enumerate"):
        spec = _spec(args)
        ts = zonotopes.enumerate_tilings(spec, max_tilings=args.max_elements)
        if args.action == "count":
            print(len(ts))
        else:
            print(_dump({"count": len(ts), "tilings": [t.to_json() for t in ts]}))
        return
    t = _tiling(args, ZonotopeSpec(_int_list(args.multiplicities)) if args.multiplicities else None)
    if args.action == "render":
        if args.format == "svg":
            print(zonotopes.to_svg(t, distinguished=args.distinguished), end="")
        else:
            print(_dump(t.to_json()))
        return
    sites = zonotopes.flips(t, pivot=args.distinguished)
    print(_dump({"flips": [
        {"triple": list(s.triple), "base": list(s.base), "upper": s.upper, "direction": s.direction}
        for s in sites
    ]}))


# ---------------------------------------------------------------------------
# structure


def cmd_structure(args) -> None:
    spec = _spec(args)
    F = args.distinguished
    if args.action == "decompose":
        graph = structure.flip_graph(spec, pivot=F, max_tilings=args.max_elements)
        graph, dec = structure.decompose(graph, F)
        if args.format == "dot":
            print(structure.flip_graph_dot(graph, dec), end="")
            return
        blocks = []
        for b in range(len(dec)):
            top, bottom = structure.block_extremes(graph, dec, b)
            blocks.append({
                "size": len(dec.members[b]),
                "members": list(dec.members[b]),
                "max": graph.index[top],
                "min": graph.index[bottom],
                "distributive": bool(poset.is_distributive(structure.block_order(graph, dec, b))),
            })
        print(_dump({
            "distinguished": dec.distinguished,
            "tilings": len(graph),
            "blocks": blocks,
            "check": bool(structure.check_decomposition(graph, dec)),
        }))
    elif args.action == "quotient":
        q = structure.quotient(spec, F)
        if args.format == "dot":
            print(poset.hasse_dot(q.order, name="quotient", label=lambda t: str(q.target.index[t])), end="")
            return
        print(_dump({
            "blocks": len(q.order),
            "edges": sorted(list(e) for e in q.edges),
            "bijection": {str(b): q.target.index[t] for b, t in sorted(q.bijection.items())},
            "isomorphic": True,
        }))
    elif args.action == "shortest-path":
        t1 = _tiling(args, spec, args.source)
        t2 = _tiling(args, spec, args.target)
        path = structure.shortest_flip_path(t1, t2, max_tilings=args.max_elements)
        reached = structure.walk(t1, path) == t2
        print(_dump({
            "length": len(path),
            "certified": reached,
            "path": [{"triple": list(s.triple), "base": list(s.base), "upper": s.upper} for s in path],
        }))
    elif args.action == "grade":
        graph = structure.flip_graph(spec, pivot=F, max_tilings=args.max_elements)
        check = structure.gradedness_check(graph)
        out = {"graded": bool(check), "tilings": len(graph)}
        if check:
            out["height"] = max(check.witness.values()) - min(check.witness.values())
        print(_dump(out))
    elif args.action == "lattice-witness":
        w = structure.lattice_failure_witness(spec, max_tilings=args.max_elements, seed=args.seed)
        if w is None:
            print(_dump({"lattice": True}))
        else:
            print(_dump({
                "lattice": False,
                "exhaustive": w.exhaustive,
                "first": w.first.to_json(),
                "second": w.second.to_json(),
                "maximal_lower_bounds": [t.to_json() for t in w.maximal_lower_bounds],
            }))


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    from .verify import run_suite

    results = run_suite(args.suite, args.max_size)
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else ""))
    return 0 if all(ok for _, ok, _ in results) else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zonolat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, default_max=200_000, formats=("json",)):
        p.add_argument("--max-elements", type=int, default=default_max, help="size guard")
        p.add_argument("--format", choices=formats, default="json")

    p = sub.add_parser("partitions", help="partition problems on a DAG")
    p.add_argument("action", choices=["enumerate", "meet", "join", "lattice-dot"])
    p.add_argument("--dag", help="JSON DAG file")
    p.add_argument("--height", help="height bound (integer or inf)")
    p.add_argument("--problem", help="JSON partition problem file")
    p.add_argument("--a", help="first partition (1,0,.. or JSON file)")
    p.add_argument("--b", help="second partition")
    p.add_argument("--count", action="store_true", help="print only the number of partitions")
    common(p, formats=("json", "dot"))
    p.set_defaults(func=cmd_partitions)

    for verb in (linear.SPM, linear.BRYLAWSKI):
        p = sub.add_parser(verb, help=f"lattice generated by the {verb} rules from (n)")
        p.add_argument("n", type=int)
        p.add_argument("--max-n", type=int, default=None, help="override the weight guard")
        p.add_argument("--labels", action="store_true", help="label transitions by column")
        p.add_argument("--count", action="store_true")
        common(p, formats=("json", "dot"))
        p.set_defaults(func=cmd_linear)

    p = sub.add_parser("pi", help="suffix-sum embedding of a linear partition")
    p.add_argument("a")
    p.add_argument("b", nargs="?")
    p.set_defaults(func=cmd_pi)

    p = sub.add_parser("tilings", help="rhombic tilings of a 2D zonotope")
    p.add_argument("action", choices=["enumerate", "count", "render", "flips"])
    p.add_argument("--multiplicities", help="e.g. 1,1,1")
    p.add_argument("--tiling", help="JSON tiling file, or bottom/top")
    p.add_argument("--distinguished", type=int, default=None, help="distinguished family (0-based)")
    common(p, formats=("json", "svg"))
    p.set_defaults(func=cmd_tilings)

    p = sub.add_parser("structure", help="flip graph structure")
    p.add_argument("action", choices=["decompose", "quotient", "shortest-path", "grade", "lattice-witness"])
    p.add_argument("--multiplicities", required=True)
    p.add_argument("--distinguished", type=int, default=None)
    p.add_argument("--from", dest="source", default="bottom", help="JSON tiling file, or bottom/top")
    p.add_argument("--to", dest="target", default="top")
    p.add_argument("--seed", type=int, default=0, help="seed of the sampled witness search")
    common(p, formats=("json", "dot"))
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("verify", help="run the built-in property suite")
    p.add_argument("--suite", choices=["all", "partitions", "linear", "tilings", "structure"], default="all")
    p.add_argument("--max-size", choices=["small", "medium"], default="small")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"zonolat: usage error: {exc}", file=sys.stderr)
        return 2
    except (ZonolatError, ValueError, KeyError) as exc:
        print(f"zonolat: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
