"""Self-check suite behind ``zonolat verify``: each check returns ``(name, ok, detail)``."""
from __future__ import annotations

from itertools import combinations

from . import linear, partitions, poset, structure, zonotopes
from .poset import Dag
from .zonotopes import ZonotopeSpec

G1 = Dag(5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)])

SIZES = {
    "small": {"heights": (1, 2), "n": 7, "zonotopes": ((1, 1, 1), (2, 1, 1), (1, 1, 1, 1))},
    "medium": {"heights": (1, 2, 3), "n": 10, "zonotopes": ((1, 1, 1), (2, 2, 2), (1, 1, 1, 1), (1, 1, 1, 1, 1))},
}


def _partitions(size):
    out = []
    for h in size["heights"]:
        problem = partitions.PartitionProblem(G1, h)
        order = partitions.enumerate_partitions(problem)
        brute = partitions.brute_force_partitions(problem)
        out.append((f"partitions G1 h={h} matches brute force", sorted(order.elements) == sorted(brute), len(order)))
        out.append((f"partitions G1 h={h} distributive lattice", bool(poset.is_distributive(order)), ""))
        ideals = poset.count_ideals(partitions.product_order(problem))
        out.append((f"partitions G1 h={h} ideal count", ideals == len(order), ideals))
        ok = all(
            poset.brute_meet(order, a, b) == partitions.meet(problem, a, b)
            and poset.brute_join(order, a, b) == partitions.join(problem, a, b)
            for a, b in combinations(order.elements, 2)
        )
        out.append((f"partitions G1 h={h} meet/join componentwise", ok, ""))
    return out


def _linear(size):
    out = []
    n = size["n"]
    for rules in (linear.SPM, linear.BRYLAWSKI):
        order = linear.generate(n, rules)
        out.append((f"{rules}({n}) is a lattice", bool(poset.is_lattice(order)), len(order)))
    lb = linear.generate(n, linear.BRYLAWSKI)
    out.append((f"brylawski({n}) = all partitions", set(lb.elements) == set(linear.all_partitions(n)), ""))
    ok = all(
        linear.lb_meet(a, b) == poset.brute_meet(lb, a, b)
        and linear.dominance_leq(a, b) == lb.leq(a, b)
        for a, b in combinations(lb.elements, 2)
    )
    out.append((f"brylawski({n}) meet and order are dominance", ok, ""))
    quad = (
        linear.pi_embedding((2, 2)),
        linear.pi_embedding((1, 1, 1)),
        linear.pi_embedding((2, 1)),
    )
    out.append(("pi values (4,2) (3,2,1) (3,1)", quad == ((4, 2), (3, 2, 1), (3, 1)), quad))
    return out


def _tilings(size):
    out = []
    for m in size["zonotopes"]:
        spec = ZonotopeSpec(m)
        ts = zonotopes.enumerate_tilings(spec)
        closure = zonotopes.flip_closure(zonotopes.extreme_tiling(spec))
        out.append((f"tilings {m} recursive = flip closure", ts == closure, len(ts)))
        out.append((f"tilings {m} all valid", all(zonotopes.validate(t) for t in ts), ""))
        ok = True
        for t in ts:
            tp = zonotopes.tiling_to_partition(t)
            back = zonotopes.partition_to_tiling(tp.reduced, tp.parts, m[-1], angle=spec.angles[-1])
            ok = ok and back == t
        out.append((f"tilings {m} partition round trip", ok, ""))
    return out


def _structure(size):
    out = []
    for m in size["zonotopes"]:
        spec = ZonotopeSpec(m)
        for F in range(spec.D):
            graph, dec = structure.decompose(spec, F)
            ok = bool(structure.check_decomposition(graph, dec)) and bool(structure.check_extreme_flips(graph, dec))
            out.append((f"structure {m} F={F} decomposition", ok, f"{len(dec)} blocks"))
            if spec.D > 3:
                structure.quotient(spec, F)
                out.append((f"structure {m} F={F} quotient isomorphism", True, ""))
        graph = structure.flip_graph(spec)
        out.append((f"structure {m} graded", bool(structure.gradedness_check(graph)), ""))
        if spec.D == 3:
            out.append((f"structure {m} is a lattice", structure.lattice_failure_witness(graph) is None, ""))
    spec = ZonotopeSpec((1, 1, 1))
    path = structure.shortest_flip_path(zonotopes.extreme_tiling(spec), zonotopes.extreme_tiling(spec, top=True))
    out.append(("shortest path hexagon (1,1,1) has length 1", len(path) == 1, ""))
    return out


SUITES = {"partitions": _partitions, "linear": _linear, "tilings": _tilings, "structure": _structure}


def run_suite(suite: str = "all", max_size: str = "small") -> list[tuple[str, bool, object]]:
    size = SIZES[max_size]
    names = list(SUITES) if suite == "all" else [suite]
    results = []
    for name in names:
        try:
            results.extend(SUITES[name](size))
        except Exception as exc:  # a crash is reported as a failed check
            results.append((f"{name} suite", False, f"{type(exc).__name__}: {exc}"))
    return results
