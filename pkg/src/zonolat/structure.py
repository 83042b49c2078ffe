"""Global structure of the flip order on tilings of a zonotope.

A :class:`FlipGraph` holds every tiling of a zonotope together with its
forward flips in one *frame*.  The frame is named by ``pivot``, the family
treated as the distinguished (last) one; ``pivot = D - 1`` is the plain
frame.  Decomposition and quotient for a distinguished family ``F`` are
computed in the frame ``pivot = F``.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .errors import IsomorphismFailure, NotUnique, SizeExceeded
from .poset import Check, FiniteOrder, hasse_dot, is_distributive, is_lattice
from .zonotopes import (
    DEFAULT_MAX_TILINGS,
    FlipSite,
    Tiling,
    ZonotopeSpec,
    apply_flip,
    delete_family,
    extreme_tiling,
    flips,
    neighbours,
)


class FlipEdge(NamedTuple):
    source: int
    target: int
    triple: tuple[int, int, int]


@dataclass(frozen=True)
class FlipGraph:
    zonotope: ZonotopeSpec
    pivot: int
    tilings: tuple[Tiling, ...]
    edges: tuple[FlipEdge, ...]

    @cached_property
    def index(self) -> dict[Tiling, int]:
        return {t: k for k, t in enumerate(self.tilings)}

    @cached_property
    def order(self) -> FiniteOrder:
        """Reachability order of forward flips (raises CycleError if they cycle)."""
        return FiniteOrder(self.tilings, [(e.source, e.target) for e in self.edges])

    @cached_property
    def adjacency(self) -> list[list[FlipEdge]]:
        out = [[] for _ in self.tilings]
        for e in self.edges:
            out[e.source].append(e)
        return out

    def __len__(self):
        return len(self.tilings)


def flip_graph(zonotope: ZonotopeSpec, pivot: int | None = None, max_tilings: int = DEFAULT_MAX_TILINGS) -> FlipGraph:
    """Breadth-first search over flips from the bottom tiling."""
    pivot = zonotope.D - 1 if pivot is None else pivot
    start = extreme_tiling(zonotope)
    seen = {start}
    queue = deque([start])
    found = []
    while queue:
        t = queue.popleft()
        for site, u in neighbours(t, pivot):
            if site.direction == 1:
                found.append((t, u, site.triple))
            if u not in seen:
                seen.add(u)
                if len(seen) > max_tilings:
                    raise SizeExceeded(f"more than {max_tilings} tilings")
                queue.append(u)
    tilings = tuple(sorted(seen))
    index = {t: k for k, t in enumerate(tilings)}
    edges = tuple(sorted(FlipEdge(index[a], index[b], tr) for a, b, tr in found))
    return FlipGraph(zonotope, pivot, tilings, edges)


def is_connected(graph: FlipGraph) -> bool:
    if not graph.tilings:
        return False
    adj = [[] for _ in graph.tilings]
    for e in graph.edges:
        adj[e.source].append(e.target)
        adj[e.target].append(e.source)
    seen = {0}
    stack = [0]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(graph.tilings)


# ---------------------------------------------------------------------------
# decomposition into distributive lattices


@dataclass(frozen=True)
class Decomposition:
    distinguished: int
    keys: tuple[Tiling, ...]  # reduced tiling of each block
    members: tuple[tuple[int, ...], ...]  # tiling indices of each block
    block_of: tuple[int, ...]  # block index of each tiling

    def __len__(self):
        return len(self.keys)


def _graph_for(target, distinguished: int | None) -> FlipGraph:
    if isinstance(target, FlipGraph):
        F = target.zonotope.D - 1 if distinguished is None else distinguished
        if target.pivot != F:
            raise ValueError(f"flip graph is in frame {target.pivot}, need frame {F}")
        return target
    return flip_graph(target, pivot=distinguished)


def decompose(target, distinguished: int | None = None) -> tuple[FlipGraph, Decomposition]:
    """Group tilings by the tiling left after deleting the distinguished family."""
    graph = _graph_for(target, distinguished)
    F = graph.pivot
    reduced = [delete_family(t, F) for t in graph.tilings]
    keys = tuple(sorted(set(reduced)))
    where = {k: b for b, k in enumerate(keys)}
    block_of = tuple(where[r] for r in reduced)
    members = [[] for _ in keys]
    for x, b in enumerate(block_of):
        members[b].append(x)
    return graph, Decomposition(F, keys, tuple(map(tuple, members)), block_of)


def block_order(graph: FlipGraph, dec: Decomposition, block: int) -> FiniteOrder:
    """Forward-flip order restricted to one block, using intra-block flips only."""
    members = dec.members[block]
    local = {x: k for k, x in enumerate(members)}
    rel = [
        (local[e.source], local[e.target])
        for x in members
        for e in graph.adjacency[x]
        if dec.block_of[e.target] == block
    ]
    return FiniteOrder([graph.tilings[x] for x in members], rel)


def check_decomposition(graph: FlipGraph, dec: Decomposition) -> Check:
    """Intra-block flips are exactly those involving the distinguished family, and
    every block is a distributive lattice under them."""
    F = dec.distinguished
    for e in graph.edges:
        intra = dec.block_of[e.source] == dec.block_of[e.target]
        if intra != (F in e.triple):
            return Check(False, ("edge", e))
    for b in range(len(dec)):
        order = block_order(graph, dec, b)
        if not is_lattice(order) or not is_distributive(order):
            return Check(False, ("block", b))
    return Check(True)


def block_extremes(graph: FlipGraph, dec: Decomposition, block: int) -> tuple[Tiling, Tiling]:
    """``(maximum, minimum)`` of a block: its unique sink and unique source."""
    members = set(dec.members[block])
    has_out = {e.source for x in members for e in graph.adjacency[x] if e.target in members}
    has_in = {e.target for x in members for e in graph.adjacency[x] if e.target in members}
    sinks = sorted(members - has_out)
    sources = sorted(members - has_in)
    if len(sinks) != 1 or len(sources) != 1:
        raise NotUnique(f"block {block}: {len(sinks)} maximal and {len(sources)} minimal tilings")
    return graph.tilings[sinks[0]], graph.tilings[sources[0]]


def _reduced_sites(t: Tiling, F: int) -> set:
    """Flip sites of ``t`` avoiding family ``F``, written in reduced coordinates."""
    out = set()
    for s in flips(t):
        if F in s.triple:
            continue
        triple = tuple(x - (x > F) for x in s.triple)
        out.add((triple, s.base[:F] + s.base[F + 1:], s.upper))
    return out


def check_extreme_flips(graph: FlipGraph, dec: Decomposition) -> Check:
    """A flip avoiding the distinguished family that is possible somewhere in a
    block is also possible at the block's maximum and minimum."""
    F = dec.distinguished
    for b in range(len(dec)):
        top, bottom = block_extremes(graph, dec, b)
        at_top, at_bottom = _reduced_sites(top, F), _reduced_sites(bottom, F)
        for x in dec.members[b]:
            missing = _reduced_sites(graph.tilings[x], F) - (at_top & at_bottom)
            if missing:
                return Check(False, (b, x, sorted(missing)[0]))
    return Check(True)


# ---------------------------------------------------------------------------
# quotient


@dataclass(frozen=True)
class Quotient:
    order: FiniteOrder  # on the reduced tilings, one per block
    edges: frozenset  # (block, block) pairs with a cross-block forward flip
    bijection: dict  # block index -> reduced tiling
    target: FlipGraph  # flip graph of the reduced zonotope in the induced frame


def quotient_edges_from_extremes(graph: FlipGraph, dec: Decomposition) -> frozenset:
    """Block edges read off the forward flips leaving each block maximum."""
    out = set()
    F = dec.distinguished
    for b in range(len(dec)):
        top, _ = block_extremes(graph, dec, b)
        for e in graph.adjacency[graph.index[top]]:
            if F not in e.triple:
                out.add((b, dec.block_of[e.target]))
    return frozenset(out)


def quotient_edges_full(graph: FlipGraph, dec: Decomposition) -> frozenset:
    return frozenset(
        (dec.block_of[e.source], dec.block_of[e.target])
        for e in graph.edges
        if dec.block_of[e.source] != dec.block_of[e.target]
    )


def quotient(target, distinguished: int | None = None, cross_check: bool = True) -> Quotient:
    """Blocks ordered by cross-block flips, with the isomorphism onto the reduced zonotope.

    The candidate bijection sends a block to its reduced tiling.  It is
    verified to carry the block edges exactly onto the forward flips of the
    reduced zonotope (frame ``F - 1``) and the two reachability orders onto
    each other; any mismatch raises IsomorphismFailure.
    """
    graph, dec = decompose(target, distinguished)
    F = dec.distinguished
    edges = quotient_edges_from_extremes(graph, dec)
    if cross_check and edges != quotient_edges_full(graph, dec):
        raise IsomorphismFailure("edges from block maxima differ from the full scan")
    order = FiniteOrder(dec.keys, sorted(edges))
    reduced_spec = graph.zonotope.without(F)
    tgt = flip_graph(reduced_spec, pivot=F - 1)
    bijection = dict(enumerate(dec.keys))
    if set(bijection.values()) != set(tgt.tilings):
        raise IsomorphismFailure("blocks do not match the tilings of the reduced zonotope")
    mapped = {(tgt.index[bijection[a]], tgt.index[bijection[b]]) for a, b in edges}
    if mapped != {(e.source, e.target) for e in tgt.edges}:
        raise IsomorphismFailure("block edges differ from the reduced flip graph")
    for a in range(len(order)):
        for b in range(len(order)):
            if order.leq_index(a, b) != tgt.order.leq_index(tgt.index[bijection[a]], tgt.index[bijection[b]]):
                raise IsomorphismFailure(f"order mismatch between blocks {a} and {b}")
    return Quotient(order, edges, bijection, tgt)


# ---------------------------------------------------------------------------
# paths and grading


def shortest_flip_path(t1: Tiling, t2: Tiling, max_tilings: int = DEFAULT_MAX_TILINGS) -> list[FlipSite]:
    """A minimum-length flip sequence from ``t1`` to ``t2`` (flips in either direction).

    Breadth-first search, so the length is certified minimal.
    """
    if t1.zonotope.multiplicities != t2.zonotope.multiplicities:
        raise ValueError("tilings of different zonotopes")
    if t1 == t2:
        return []
    parent = {t1: None}
    queue = deque([t1])
    while queue:
        t = queue.popleft()
        for site, u in neighbours(t):
            if u in parent:
                continue
            parent[u] = (t, site)
            if u == t2:
                path = []
                while parent[u] is not None:
                    u, site = parent[u]
                    path.append(site)
                return path[::-1]
            if len(parent) > max_tilings:
                raise SizeExceeded(f"more than {max_tilings} tilings visited")
            queue.append(u)
    raise ValueError("no flip path; the tilings are not of the same zonotope")


def walk(t: Tiling, path) -> Tiling:
    for site in path:
        t = apply_flip(t, site)
    return t


def gradedness_check(graph: FlipGraph) -> Check:
    """A rank function exists with every forward flip raising the rank by one.

    On a connected graph this is equivalent to every forward path between
    two fixed tilings having the same length.  Witness: an edge where the
    ranks propagated along the undirected graph disagree.
    """
    adj = [[] for _ in graph.tilings]
    for e in graph.edges:
        adj[e.source].append((e.target, 1, e))
        adj[e.target].append((e.source, -1, e))
    rank = {}
    for root in range(len(graph.tilings)):
        if root in rank:
            continue
        rank[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, step, e in adj[x]:
                if y not in rank:
                    rank[y] = rank[x] + step
                    queue.append(y)
                elif rank[y] != rank[x] + step:
                    return Check(False, e)
    return Check(True, rank)


def path_length_spread(graph: FlipGraph) -> Check:
    """Brute force: for every source, longest and shortest forward paths agree."""
    order = graph.order
    topo = sorted(range(len(graph)), key=lambda x: bin(order.down[x]).count("1"))
    for s in range(len(graph)):
        shortest = {s: 0}
        longest = {s: 0}
        for x in topo:
            if x not in shortest:
                continue
            for e in graph.adjacency[x]:
                y = e.target
                shortest[y] = min(shortest.get(y, 1 << 30), shortest[x] + 1)
                longest[y] = max(longest.get(y, -1), longest[x] + 1)
        for y in shortest:
            if shortest[y] != longest[y]:
                return Check(False, (s, y, shortest[y], longest[y]))
    return Check(True)


# ---------------------------------------------------------------------------
# non-lattice witness


@dataclass(frozen=True)
class LatticeWitness:
    first: Tiling
    second: Tiling
    maximal_lower_bounds: tuple[Tiling, ...]
    exhaustive: bool


def _witness_from_order(graph: FlipGraph) -> LatticeWitness | None:
    order = graph.order
    n = len(order)
    for i in range(n):
        for j in range(i + 1, n):
            if order.meet_index(i, j) is None:
                lower = order.down[i] & order.down[j]
                bounds = tuple(graph.tilings[k] for k in order.maximal(lower))
                return LatticeWitness(graph.tilings[i], graph.tilings[j], bounds, True)
    return None


def _down_set(t: Tiling, limit: int) -> set[Tiling]:
    seen = {t}
    stack = [t]
    while stack:
        for site, u in neighbours(stack.pop()):
            if site.direction == -1 and u not in seen:
                seen.add(u)
                if len(seen) > limit:
                    raise SizeExceeded(f"down-set larger than {limit}")
                stack.append(u)
    return seen


def _random_tiling(spec: ZonotopeSpec, rng: random.Random, steps: int) -> Tiling:
    t = extreme_tiling(spec)
    for _ in range(steps):
        t = apply_flip(t, rng.choice(flips(t)))
    return t


def _up_set(t: Tiling, limit: int) -> set[Tiling]:
    seen = {t}
    stack = [t]
    while stack:
        for site, u in neighbours(stack.pop()):
            if site.direction == 1 and u not in seen:
                seen.add(u)
                if len(seen) > limit:
                    raise SizeExceeded(f"up-set larger than {limit}")
                stack.append(u)
    return seen


def sampled_lattice_witness(
    spec: ZonotopeSpec, seed: int = 0, samples: int = 200, steps: int | None = None, limit: int = 5000
) -> LatticeWitness | None:
    """Search the up-sets of randomly sampled tilings for a pair without a meet.

    If two tilings above ``x`` have two maximal common lower bounds among the
    tilings above ``x``, they have no meet at all, since a meet would lie
    above ``x`` too.  For the pair found, the maximal lower bounds are then
    recomputed exactly from the intersection of the two full down-sets.
    """
    rng = random.Random(seed)
    if steps is None:
        steps = spec.tile_count
    for _ in range(samples):
        x = _random_tiling(spec, rng, rng.randrange(steps))
        try:
            up = _up_set(x, limit)
        except SizeExceeded:
            continue
        local = sorted(up)
        where = {t: k for k, t in enumerate(local)}
        rel = [(where[t], where[u]) for t in local for s, u in neighbours(t) if s.direction == 1]
        order = FiniteOrder(local, rel)
        for i in range(len(order)):
            for j in range(i + 1, len(order)):
                if order.meet_index(i, j) is not None:
                    continue
                if len(order.maximal(order.down[i] & order.down[j])) < 2:
                    continue
                a, b = local[i], local[j]
                lower = _down_set(a, DEFAULT_MAX_TILINGS) & _down_set(b, DEFAULT_MAX_TILINGS)
                maximal = sorted(
                    t for t in lower if not any(s.direction == 1 and u in lower for s, u in neighbours(t))
                )
                return LatticeWitness(a, b, tuple(maximal), False)
    return None


def lattice_failure_witness(
    target, max_tilings: int = DEFAULT_MAX_TILINGS, seed: int = 0, samples: int = 200
) -> LatticeWitness | None:
    """A pair of tilings without a meet in the (plain-frame) flip order, or None.

    Exhaustive over all pairs when the flip graph fits under ``max_tilings``;
    otherwise falls back to :func:`sampled_lattice_witness`.
    """
    if isinstance(target, FlipGraph):
        return _witness_from_order(target)
    try:
        graph = flip_graph(target, max_tilings=max_tilings)
    except SizeExceeded:
        return sampled_lattice_witness(target, seed=seed, samples=samples)
    return _witness_from_order(graph)


# ---------------------------------------------------------------------------
# output


def flip_graph_dot(graph: FlipGraph, dec: Decomposition | None = None, name: str = "flips") -> str:
    """Forward flips as a digraph; blocks of a decomposition become clusters."""
    lines = [f'digraph "{name}" {{', f"  // frame: distinguished family {graph.pivot}", "  rankdir=BT;"]
    if dec is not None:
        lines[1] = f"  // distinguished family {dec.distinguished}"
        for b, members in enumerate(dec.members):
            lines.append(f"  subgraph cluster_{b} {{")
            lines.append(f'    label="L{b}"; style=dotted;')
            for x in members:
                lines.append(f'    t{x} [label="{x}"];')
            lines.append("  }")
    else:
        for x in range(len(graph)):
            lines.append(f'  t{x} [label="{x}"];')
    for e in graph.edges:
        lines.append(f'  t{e.source} -> t{e.target} [label="{"".join(map(str, e.triple))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def block_hasse_dot(graph: FlipGraph, dec: Decomposition, block: int) -> str:
    order = block_order(graph, dec, block)
    return hasse_dot(order, name=f"block{block}", label=lambda t: str(graph.index[t]))

