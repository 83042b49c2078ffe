"""Finite partial orders, order ideals and brute-force lattice diagnostics.

Orders are stored as a tuple of labels plus a set of generating relations
``(x, y)`` meaning ``x < y`` (indices into the label tuple).  The reflexive
transitive closure is computed lazily as one Python-int bitset per element:
bit ``y`` of ``down[x]`` is set iff ``y <= x``.  Everything here is written to
serve as an oracle, so the algorithms favour obviousness over speed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from graphlib import CycleError as _GraphlibCycle
from graphlib import TopologicalSorter
from typing import Any, Hashable, Iterable, Iterator, Sequence

from .errors import CycleError, NotALattice, SizeExceeded

DEFAULT_MAX_IDEAL_ELEMENTS = 25
DEFAULT_MAX_IDEALS = 2**20


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Check:
    """Outcome of a diagnostic; truthy iff the property holds."""

    ok: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Absent:
    """Returned by brute_meet/brute_join when no unique bound exists.

    ``witnesses`` holds the maximal lower (or minimal upper) bounds, which is
    empty when there is no common bound at all.
    """

    witnesses: tuple


class Dag:
    """Directed acyclic graph on vertices ``0..vertex_count-1``.

    An edge ``(v, w)`` means the part at ``v`` is at least the part at ``w``.
    """

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[int]] = ()):
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        edge_list = [tuple(e) for e in edges]
        seen = set()
        for e in edge_list:
            if len(e) != 2:
                raise ValueError(f"edge {e!r} is not a pair")
            v, w = e
            if not (0 <= v < vertex_count and 0 <= w < vertex_count):
                raise ValueError(f"edge {e!r} has an out-of-range endpoint")
            if v == w:
                raise ValueError(f"self-loop at vertex {v}")
            if e in seen:
                raise ValueError(f"duplicate edge {e!r}")
            seen.add(e)
        self.vertex_count = vertex_count
        self.edges = frozenset(edge_list)
        self.topological_order  # rejects cycles at construction

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        """Vertices ordered so that every edge goes from earlier to later."""
        preds = {v: set() for v in range(self.vertex_count)}
        for v, w in self.edges:
            preds[w].add(v)
        try:
            return tuple(TopologicalSorter(preds).static_order())
        except _GraphlibCycle as exc:
            raise CycleError(f"directed cycle through {exc.args[1]}") from None

    def __eq__(self, other):
        return (
            isinstance(other, Dag)
            and self.vertex_count == other.vertex_count
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertex_count, self.edges))

    def __repr__(self):
        return f"Dag({self.vertex_count}, {sorted(self.edges)})"

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_json(cls, data: dict | str) -> Dag:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["vertices"]), [tuple(e) for e in data.get("edges", [])])


class FiniteOrder:
    """A finite partial order on hashable labels."""

    def __init__(self, elements: Iterable[Hashable], relations: Iterable[tuple[int, int]] = ()):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate element labels")
        n = len(self.elements)
        rel = set()
        for x, y in relations:
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError(f"relation {(x, y)} out of range")
            if x != y:
                rel.add((x, y))
        self.relations = frozenset(rel)

    @classmethod
    def from_label_pairs(cls, elements, pairs) -> FiniteOrder:
        """Build from ``(x, y)`` label pairs meaning ``x < y``."""
        elements = tuple(elements)
        index = {x: i for i, x in enumerate(elements)}
        return cls(elements, [(index[x], index[y]) for x, y in pairs])

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"FiniteOrder({len(self)} elements, {len(self.covers)} covers)"

    @cached_property
    def _lower_gens(self) -> tuple[tuple[int, ...], ...]:
        lower = [[] for _ in self.elements]
        for x, y in self.relations:
            lower[y].append(x)
        return tuple(tuple(sorted(l)) for l in lower)

    @cached_property
    def down(self) -> tuple[int, ...]:
        """Bitset of ``{y : y <= x}`` for each ``x``; raises CycleError if not antisymmetric."""
        preds = {i: set(g) for i, g in enumerate(self._lower_gens)}
        try:
            order = list(TopologicalSorter(preds).static_order())
        except _GraphlibCycle as exc:
            raise CycleError(f"relations contain a cycle through {exc.args[1]}") from None
        down = [0] * len(self.elements)
        for y in order:
            mask = 1 << y
            for x in self._lower_gens[y]:
                mask |= down[x]
            down[y] = mask
        return tuple(down)

    @cached_property
    def up(self) -> tuple[int, ...]:
        up = [0] * len(self.elements)
        for x, mask in enumerate(self.down):
            for y in bits(mask):
                up[y] |= 1 << x
        return tuple(up)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Index pairs ``(x, y)`` with ``y`` covering ``x``, sorted."""
        down = self.down
        result = []
        for y, gens in enumerate(self._lower_gens):
            for x in gens:
                # (x, y) is a cover iff no other generator below y sits above x
                if not any(z != x and down[z] >> x & 1 for z in gens):
                    result.append((x, y))
        return tuple(sorted(result))

    @cached_property
    def _down_lookup(self) -> dict[int, int]:
        return {mask: x for x, mask in enumerate(self.down)}

    @cached_property
    def _up_lookup(self) -> dict[int, int]:
        return {mask: x for x, mask in enumerate(self.up)}

    def leq(self, x, y) -> bool:
        """``x <= y`` for labels."""
        return bool(self.down[self.index[y]] >> self.index[x] & 1)

    def leq_index(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def meet_index(self, i: int, j: int) -> int | None:
        return self._down_lookup.get(self.down[i] & self.down[j])

    def join_index(self, i: int, j: int) -> int | None:
        return self._up_lookup.get(self.up[i] & self.up[j])

    def maximal(self, mask: int) -> list[int]:
        """Maximal elements of the index set encoded by ``mask``."""
        return [x for x in bits(mask) if self.up[x] & mask == 1 << x]

    def minimal(self, mask: int) -> list[int]:
        return [x for x in bits(mask) if self.down[x] & mask == 1 << x]

    def dual(self) -> FiniteOrder:
        return FiniteOrder(self.elements, [(y, x) for x, y in self.relations])

    def relabel(self, labels: Sequence[Hashable]) -> FiniteOrder:
        return FiniteOrder(labels, self.relations)

    def to_dot(self, name: str = "hasse", label=str) -> str:
        return hasse_dot(self, name=name, label=label)


# ---------------------------------------------------------------------------
# construction


def transitive_closure(dag: Dag) -> FiniteOrder:
    """Reachability order of a DAG; edge ``(v, w)`` gives ``v >= w``."""
    return FiniteOrder(range(dag.vertex_count), [(w, v) for v, w in dag.edges])


def covering_relation(order: FiniteOrder) -> set[tuple]:
    """Label pairs ``(x, y)`` with ``x < y`` and nothing strictly between."""
    e = order.elements
    return {(e[x], e[y]) for x, y in order.covers}


def chain(n: int) -> FiniteOrder:
    return FiniteOrder(range(n), [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> FiniteOrder:
    return FiniteOrder(range(n))


def product_with_chain(order: FiniteOrder, h: int, max_elements: int | None = None) -> FiniteOrder:
    """Componentwise order on ``order x {1..h}`` with labels ``(a, i)``."""
    if h < 1:
        raise ValueError("h must be at least 1")
    n = len(order)
    if max_elements is not None and n * h > max_elements:
        raise SizeExceeded(f"product has {n * h} elements > {max_elements}")
    labels = [(a, i) for a in order.elements for i in range(1, h + 1)]
    rel = []
    for x, y in order.covers:
        for i in range(h):
            rel.append((x * h + i, y * h + i))
    for x in range(n):
        for i in range(h - 1):
            rel.append((x * h + i, x * h + i + 1))
    return FiniteOrder(labels, rel)


def _ideal_masks(order: FiniteOrder, max_ideals: int) -> list[int]:
    """All down-sets as bitsets, via search adding one minimal element at a time."""
    n = len(order)
    strict_down = [order.down[x] & ~(1 << x) for x in range(n)]
    seen = {0}
    stack = [0]
    while stack:
        ideal = stack.pop()
        for x in range(n):
            if not ideal >> x & 1 and strict_down[x] & ~ideal == 0:
                nxt = ideal | 1 << x
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > max_ideals:
                        raise SizeExceeded(f"more than {max_ideals} ideals")
                    stack.append(nxt)
    return sorted(seen, key=lambda m: tuple(bits(m)))


def count_ideals(order: FiniteOrder, cap: int = DEFAULT_MAX_IDEALS) -> int:
    """Number of down-sets, or ``cap + 1`` if there are more than ``cap``."""
    try:
        return len(_ideal_masks(order, cap))
    except SizeExceeded:
        return cap + 1


def order_ideals(
    order: FiniteOrder,
    max_elements: int = DEFAULT_MAX_IDEAL_ELEMENTS,
    max_ideals: int = DEFAULT_MAX_IDEALS,
) -> FiniteOrder:
    """Inclusion order on the ideals (down-sets) of ``order``.

    Each ideal is labelled by the frozenset of its member labels; ideals are
    listed in lexicographic order of their sorted index sets.
    """
    if len(order) > max_elements:
        raise SizeExceeded(f"order has {len(order)} elements > {max_elements}")
    masks = _ideal_masks(order, max_ideals)
    where = {m: k for k, m in enumerate(masks)}
    rel = []
    for k, m in enumerate(masks):
        for x in bits(m):
            smaller = m ^ (1 << x)
            if smaller in where:
                rel.append((where[smaller], k))
    labels = [frozenset(order.elements[x] for x in bits(m)) for m in masks]
    return FiniteOrder(labels, rel)


def is_ideal(order: FiniteOrder, members: Iterable[Hashable]) -> bool:
    mask = 0
    for x in members:
        if x not in order.index:
            return False
        mask |= 1 << order.index[x]
    return all(order.down[x] & ~mask == 0 for x in bits(mask))


# ---------------------------------------------------------------------------
# brute-force lattice diagnostics


def brute_meet(order: FiniteOrder, x, y):
    """Greatest common lower bound of two labels, or :class:`Absent`."""
    i, j = order.index[x], order.index[y]
    m = order.meet_index(i, j)
    if m is not None:
        return order.elements[m]
    lower = order.down[i] & order.down[j]
    return Absent(tuple(order.elements[k] for k in order.maximal(lower)))


def brute_join(order: FiniteOrder, x, y):
    i, j = order.index[x], order.index[y]
    m = order.join_index(i, j)
    if m is not None:
        return order.elements[m]
    upper = order.up[i] & order.up[j]
    return Absent(tuple(order.elements[k] for k in order.minimal(upper)))


def is_lattice(order: FiniteOrder) -> Check:
    """Every pair has a meet and a join.

    The witness is a pair with two or more maximal lower (or minimal upper)
    bounds when there is one (meets first), else a pair with no bound at all.
    """
    n = len(order)
    if n == 0:
        return Check(False, None)
    fallback = None
    for bound, near, common in (
        (order.meet_index, order.maximal, order.down),
        (order.join_index, order.minimal, order.up),
    ):
        for i in range(n):
            for j in range(i + 1, n):
                if bound(i, j) is None:
                    if len(near(common[i] & common[j])) > 1:
                        return Check(False, (order.elements[i], order.elements[j]))
                    fallback = fallback or (i, j)
    if fallback is None:
        return Check(True)
    return Check(False, tuple(order.elements[k] for k in fallback))


def _meet_join_tables(order: FiniteOrder):
    n = len(order)
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m, J = order.meet_index(i, j), order.join_index(i, j)
            if m is None or J is None:
                raise NotALattice(f"{order.elements[i]!r} and {order.elements[j]!r} lack a bound")
            meet[i][j] = meet[j][i] = m
            join[i][j] = join[j][i] = J
    return meet, join


def _distributive_triple(order: FiniteOrder):
    meet, join = _meet_join_tables(order)
    n = len(order)
    for a in range(n):
        ma, ja = meet[a], join[a]
        for b in range(n):
            for c in range(b + 1, n):
                if join[ma[b]][ma[c]] != ma[join[b][c]] or meet[ja[b]][ja[c]] != ja[meet[b][c]]:
                    return a, b, c
    return None


def join_irreducibles(order: FiniteOrder) -> list[int]:
    """Elements with exactly one lower cover."""
    lower = [0] * len(order)
    for x, y in order.covers:
        lower[y] += 1
    return [x for x in range(len(order)) if lower[x] == 1]


def is_distributive(order: FiniteOrder, method: str = "auto") -> Check:
    """Both distributive identities hold for every triple.

    ``method="triples"`` checks the identities directly (cubic).  For larger
    lattices ``"birkhoff"`` uses the equivalent criterion that a finite
    lattice is distributive iff it has exactly as many elements as its
    poset of join-irreducibles has down-sets; a triple witness is only
    searched for once that criterion has failed.
    """
    check = is_lattice(order)
    if not check:
        raise NotALattice(f"not a lattice: {check.witness!r}")
    if method == "auto":
        method = "triples" if len(order) <= 48 else "birkhoff"
    if method == "birkhoff":
        irr = join_irreducibles(order)
        k = len(irr)
        sub = FiniteOrder(
            irr,
            [(a, b) for a in range(k) for b in range(k) if a != b and order.leq_index(irr[a], irr[b])],
        )
        if count_ideals(sub, cap=len(order)) == len(order):
            return Check(True)
    elif method != "triples":
        raise ValueError(f"unknown method {method!r}")
    triple = _distributive_triple(order)
    if triple is None:
        return Check(True)
    return Check(False, tuple(order.elements[k] for k in triple))


def is_partial_order(n: int, leq) -> bool:
    """Check a boolean relation ``leq(i, j)`` on ``range(n)`` is a partial order (O(n^3))."""
    for i in range(n):
        if not leq(i, i):
            return False
        for j in range(n):
            if i != j and leq(i, j) and leq(j, i):
                return False
            for k in range(n):
                if leq(i, j) and leq(j, k) and not leq(i, k):
                    return False
    return True


# ---------------------------------------------------------------------------
# output


def _dot_quote(text: str) -> str:
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(order: FiniteOrder, name: str = "hasse", label=str, edge_labels=None) -> str:
    """Graphviz source of the Hasse diagram, drawn bottom to top.

    ``edge_labels`` optionally maps index pairs ``(x, y)`` to a label string.
    """
    lines = [f"digraph {_dot_quote(name)} {{", "  rankdir=BT;", "  node [shape=box];"]
    for k, x in enumerate(order.elements):
        lines.append(f"  n{k} [label={_dot_quote(label(x))}];")
    for x, y in order.covers:
        extra = ""
        if edge_labels and (x, y) in edge_labels:
            extra = f" [label={_dot_quote(edge_labels[(x, y)])}]"
        lines.append(f"  n{x} -> n{y}{extra};")
    lines.append("}")
    return "\n".join(lines) + "\n"
