"""Partition problems (G, h) on DAGs and the grain-addition dynamics.

A partition is a tuple of integers indexed by vertex.  The canonical order on
solutions is the *grain order*: ``p <= q`` iff ``p[v] <= q[v]`` everywhere,
which is the reachability order of single-grain additions.  Under it the
lattice operations are the componentwise min (meet) and max (join).
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import InvalidPartition, NotAnIdeal, SizeExceeded, UnboundedHeight, VertexMismatch
from .poset import Dag, FiniteOrder, bits, product_with_chain, transitive_closure

DEFAULT_MAX_PARTITIONS = 200_000


@dataclass(frozen=True)
class PartitionProblem:
    """A DAG base plus a height bound; ``height=None`` means unbounded."""

    base: Dag
    height: int | None

    def __post_init__(self):
        if self.height is not None and self.height < 1:
            raise ValueError("height must be a positive integer or None")

    @property
    def vertex_count(self) -> int:
        return self.base.vertex_count

    def to_json(self) -> dict:
        return {"dag": self.base.to_json(), "height": "inf" if self.height is None else self.height}

    @classmethod
    def from_json(cls, data: dict | str) -> PartitionProblem:
        if isinstance(data, str):
            data = json.loads(data)
        h = data["height"]
        return cls(Dag.from_json(data["dag"]), None if h in ("inf", None) else int(h))


def _as_parts(problem: PartitionProblem, assignment) -> tuple[int, ...]:
    n = problem.vertex_count
    if isinstance(assignment, Mapping):
        if set(assignment) != set(range(n)):
            raise VertexMismatch(f"keys {sorted(assignment)} differ from vertices 0..{n - 1}")
        return tuple(int(assignment[v]) for v in range(n))
    parts = assignment if type(assignment) is tuple else tuple(int(x) for x in assignment)
    if len(parts) != n:
        raise VertexMismatch(f"{len(parts)} parts for {n} vertices")
    return parts


def is_valid(problem: PartitionProblem, assignment) -> bool:
    """Range and edge constraints; ``assignment`` is a sequence or a vertex map."""
    parts = _as_parts(problem, assignment)
    h = problem.height
    if parts and (min(parts) < 0 or (h is not None and max(parts) > h)):
        return False
    return all(parts[v] >= parts[w] for v, w in problem.base.edges)


def _check(problem, p) -> tuple[int, ...]:
    parts = _as_parts(problem, p)
    if not is_valid(problem, parts):
        raise InvalidPartition(f"{parts} is not a solution")
    return parts


def _in_edges(dag: Dag) -> list[list[int]]:
    preds = [[] for _ in range(dag.vertex_count)]
    for v, w in dag.edges:
        preds[w].append(v)
    return preds


def successors(problem: PartitionProblem, p: Sequence[int]) -> list[tuple[int, ...]]:
    """Partitions obtained by adding one grain at one vertex, by vertex index."""
    p = _check(problem, p)
    preds = _in_edges(problem.base)
    h = problem.height
    out = []
    for v, x in enumerate(p):
        if h is not None and x >= h:
            continue
        if all(p[u] > x for u in preds[v]):
            out.append(p[:v] + (x + 1,) + p[v + 1:])
    return out


def enumerate_partitions(problem: PartitionProblem, max_elements: int = DEFAULT_MAX_PARTITIONS) -> FiniteOrder:
    """All of P(G, h) under the grain order, covers being single-grain additions.

    Found by breadth-first search from the empty partition; elements are
    listed in lexicographic order of their part tuples.
    """
    if problem.height is None:
        raise UnboundedHeight("cannot enumerate an unbounded partition problem")
    preds = _in_edges(problem.base)
    h = problem.height
    start = (0,) * problem.vertex_count
    seen = {start}
    queue = deque([start])
    edges = []
    while queue:
        p = queue.popleft()
        for v, x in enumerate(p):
            if x < h and all(p[u] > x for u in preds[v]):
                q = p[:v] + (x + 1,) + p[v + 1:]
                edges.append((p, q))
                if q not in seen:
                    seen.add(q)
                    if len(seen) > max_elements:
                        raise SizeExceeded(f"more than {max_elements} partitions")
                    queue.append(q)
    return FiniteOrder.from_label_pairs(sorted(seen), edges)


def brute_force_partitions(problem: PartitionProblem) -> list[tuple[int, ...]]:
    """Every assignment in ``{0..h}^V`` that passes :func:`is_valid` (oracle)."""
    if problem.height is None:
        raise UnboundedHeight("cannot enumerate an unbounded partition problem")
    rng = range(problem.height + 1)
    return [p for p in product(rng, repeat=problem.vertex_count) if is_valid(problem, p)]


def meet(problem: PartitionProblem, a, b) -> tuple[int, ...]:
    """Grain-order meet: componentwise minimum."""
    a, b = _check(problem, a), _check(problem, b)
    return tuple(map(min, a, b))


def join(problem: PartitionProblem, a, b) -> tuple[int, ...]:
    """Grain-order join: componentwise maximum."""
    a, b = _check(problem, a), _check(problem, b)
    return tuple(map(max, a, b))


def empty_partition(problem: PartitionProblem) -> tuple[int, ...]:
    return (0,) * problem.vertex_count


def full_partition(problem: PartitionProblem) -> tuple[int, ...]:
    if problem.height is None:
        raise UnboundedHeight("no full partition without a height bound")
    return (problem.height,) * problem.vertex_count


# ---------------------------------------------------------------------------
# Birkhoff representation


def base_order(problem: PartitionProblem) -> FiniteOrder:
    """The order on vertices used by the ideal bijection.

    It is the dual of the DAG reachability order: an edge ``(v, w)`` puts
    ``v`` *below* ``w``, so that a down-set containing ``(w, i)`` also
    contains ``(v, i)`` and the decoded parts satisfy ``p[v] >= p[w]``.
    """
    return transitive_closure(problem.base).dual()


def product_order(problem: PartitionProblem, max_elements: int | None = None) -> FiniteOrder:
    if problem.height is None:
        raise UnboundedHeight("the product order needs a finite height")
    return product_with_chain(base_order(problem), problem.height, max_elements=max_elements)


def to_ideal(problem: PartitionProblem, p) -> frozenset:
    """The down-set ``{(v, i) : 1 <= i <= p[v]}`` of the product order."""
    if problem.height is None:
        raise UnboundedHeight("the ideal bijection needs a finite height")
    p = _check(problem, p)
    return frozenset((v, i) for v, x in enumerate(p) for i in range(1, x + 1))


def from_ideal(problem: PartitionProblem, ideal: Iterable) -> tuple[int, ...]:
    """Inverse of :func:`to_ideal`: ``p[v]`` is the largest ``i`` with ``(v, i)`` in the ideal."""
    if problem.height is None:
        raise UnboundedHeight("the ideal bijection needs a finite height")
    ideal = frozenset(ideal)
    n, h = problem.vertex_count, problem.height
    for cell in ideal:
        if not (isinstance(cell, tuple) and len(cell) == 2 and 0 <= cell[0] < n and 1 <= cell[1] <= h):
            raise NotAnIdeal(f"{cell!r} is not an element of the product order")
    down = base_order(problem).down
    for v, i in ideal:
        if i > 1 and (v, i - 1) not in ideal:
            raise NotAnIdeal(f"({v}, {i - 1}) missing below ({v}, {i})")
        for u in bits(down[v]):
            if (u, i) not in ideal:
                raise NotAnIdeal(f"({u}, {i}) missing below ({v}, {i})")
    parts = [0] * n
    for v, i in ideal:
        parts[v] = max(parts[v], i)
    return tuple(parts)


# ---------------------------------------------------------------------------
# hypersolid partitions


def grid_cells(sizes: Sequence[int]) -> list[tuple[int, ...]]:
    """Cells of a grid, 1-based, in the vertex order used by :func:`hypersolid_problem`."""
    return list(product(*(range(1, s + 1) for s in sizes)))


def hypersolid_problem(d: int, sizes: int | Sequence[int], h: int | None) -> PartitionProblem:
    """H(d, s, h): grid DAG with cell ``(1, .., 1)`` holding the largest part.

    Vertices are the cells of :func:`grid_cells` (row-major); each cell has
    an edge to every coordinate-adjacent cell one step further out.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    if isinstance(sizes, int):
        sizes = (sizes,) * d
    sizes = tuple(sizes)
    if len(sizes) != d or any(s < 1 for s in sizes):
        raise ValueError(f"need {d} positive sizes, got {sizes}")
    cells = grid_cells(sizes)
    where = {c: k for k, c in enumerate(cells)}
    edges = []
    for c in cells:
        for axis in range(d):
            nxt = c[:axis] + (c[axis] + 1,) + c[axis + 1:]
            if nxt in where:
                edges.append((where[c], where[nxt]))
    return PartitionProblem(Dag(len(cells), edges), h)


def array_to_parts(array: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Flatten a plane-partition array row by row."""
    return tuple(x for row in array for x in row)


def parts_to_array(parts: Sequence[int], sizes: tuple[int, int]) -> list[list[int]]:
    s1, s2 = sizes
    return [list(parts[i * s2:(i + 1) * s2]) for i in range(s1)]


def plane_partition_boxes(parts: Sequence[int] | Sequence[Sequence[int]], sizes: tuple[int, int] | None = None):
    """Unit cubes ``(i, j, k)``, 1-based, with ``k <= p[i, j]``."""
    if sizes is None:
        array = [list(row) for row in parts]
    else:
        array = parts_to_array(parts, sizes)
    return {
        (i + 1, j + 1, k)
        for i, row in enumerate(array)
        for j, x in enumerate(row)
        for k in range(1, x + 1)
    }
