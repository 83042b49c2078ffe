"""Rhombic tilings of two-dimensional zonotopes.

Geometry is kept exact by working in the lifted lattice ``Z^D``: a point is
the coefficient vector ``c`` of ``sum_k c_k v_k`` and every tiling vertex has
``0 <= c_k <= l_k``.  A tile ``{i, j}`` anchored at ``a`` is the rhombus with
corners ``a, a + e_i, a + e_j, a + e_i + e_j``.  Families are 0-based and
sorted by the angle of their generator, which lies in ``(0, pi)``; every
orientation test therefore reduces to comparing family indices.

Two facts about these tilings are used throughout:

* the de Bruijn line of family ``f`` with rank ``r`` is made of the tiles
  ``{f, j}`` whose anchor has ``a_f = r``;
* the line of family ``f`` and the line of family ``g`` meet in the unique
  tile ``{f, g}`` with anchor coordinates ``a_f, a_g`` equal to their ranks.
"""
from __future__ import annotations

import json
import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    CycleError,
    CyclicOrientation,
    InvalidPartition,
    InvalidSite,
    InvalidTiling,
    OrientationInconsistent,
    SizeExceeded,
)
from .partitions import PartitionProblem, enumerate_partitions, hypersolid_problem, is_valid, parts_to_array
from .poset import Check, Dag

DEFAULT_MAX_TILINGS = 200_000


def default_angles(D: int) -> tuple[float, ...]:
    return tuple(math.pi * (2 * k - 1) / (2 * D) for k in range(1, D + 1))


@dataclass(frozen=True)
class ZonotopeSpec:
    """Generators by angle (strictly increasing in ``(0, pi)``) with multiplicities."""

    multiplicities: tuple[int, ...]
    angles: tuple[float, ...] = None

    def __post_init__(self):
        mult = tuple(int(x) for x in self.multiplicities)
        object.__setattr__(self, "multiplicities", mult)
        if len(mult) < 2:
            raise ValueError("a 2D zonotope needs at least two generators")
        if any(x < 1 for x in mult):
            raise ValueError(f"multiplicities must be positive: {mult}")
        angles = default_angles(len(mult)) if self.angles is None else tuple(float(x) for x in self.angles)
        if len(angles) != len(mult):
            raise ValueError("one angle per generator")
        if not all(0 < x < math.pi for x in angles) or any(x >= y for x, y in zip(angles, angles[1:])):
            raise ValueError(f"angles must be strictly increasing inside (0, pi): {angles}")
        object.__setattr__(self, "angles", angles)

    @property
    def D(self) -> int:
        return len(self.multiplicities)

    def vector(self, k: int) -> tuple[float, float]:
        return math.cos(self.angles[k]), math.sin(self.angles[k])

    def point(self, coeffs: Sequence[int]) -> tuple[float, float]:
        """Planar position of a lifted point (floats; for rendering only)."""
        x = sum(c * math.cos(a) for c, a in zip(coeffs, self.angles))
        y = sum(c * math.sin(a) for c, a in zip(coeffs, self.angles))
        return x, y

    @property
    def tile_count(self) -> int:
        l = self.multiplicities
        return sum(l[i] * l[j] for i in range(self.D) for j in range(i + 1, self.D))

    def without(self, f: int) -> ZonotopeSpec:
        return ZonotopeSpec(
            self.multiplicities[:f] + self.multiplicities[f + 1:], self.angles[:f] + self.angles[f + 1:]
        )

    def with_family(self, position: int, multiplicity: int, angle: float | None = None) -> ZonotopeSpec:
        if angle is None:
            lo = self.angles[position - 1] if position > 0 else 0.0
            hi = self.angles[position] if position < self.D else math.pi
            angle = (lo + hi) / 2
        return ZonotopeSpec(
            self.multiplicities[:position] + (multiplicity,) + self.multiplicities[position:],
            self.angles[:position] + (angle,) + self.angles[position:],
        )

    @cached_property
    def boundary(self) -> dict[tuple[tuple[int, ...], int], int]:
        """Boundary edges ``(start, direction) -> side of the zonotope interior``.

        The right chain runs ``v_0 .. v_{D-1}`` with the interior on its left
        (+1); the left chain runs ``v_{D-1} .. v_0`` from the origin with the
        interior on its right (-1).
        """
        l, D = self.multiplicities, self.D
        out = {}
        for m in range(D):
            for t in range(l[m]):
                right = tuple(l[k] if k < m else t if k == m else 0 for k in range(D))
                left = tuple(0 if k < m else t if k == m else l[k] for k in range(D))
                out[(right, m)] = 1
                out[(left, m)] = -1
        return out

    def to_json(self) -> dict:
        return {"multiplicities": list(self.multiplicities), "angles": list(self.angles)}

    @classmethod
    def from_json(cls, data: dict) -> ZonotopeSpec:
        return cls(tuple(data["multiplicities"]), tuple(data["angles"]) if data.get("angles") else None)


def _unit(D: int, k: int) -> tuple[int, ...]:
    return tuple(1 if x == k else 0 for x in range(D))


def _add(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _bump(a: Sequence[int], k: int, delta: int = 1) -> tuple[int, ...]:
    return tuple(x + delta if i == k else x for i, x in enumerate(a))


class Tile(NamedTuple):
    """Rhombus spanned by generators ``i < j`` with lowest corner ``anchor``."""

    i: int
    j: int
    anchor: tuple[int, ...]

    @property
    def families(self) -> tuple[int, int]:
        return self.i, self.j

    def corners(self) -> tuple[tuple[int, ...], ...]:
        a = self.anchor
        return a, _bump(a, self.i), _bump(_bump(a, self.i), self.j), _bump(a, self.j)

    def edges(self) -> list[tuple[tuple[tuple[int, ...], int], int]]:
        """``((start, direction), side)`` for the four sides of the rhombus.

        ``side`` is +1 when the tile lies to the left of the directed edge.
        """
        a, i, j = self.anchor, self.i, self.j
        return [
            ((a, i), 1),
            ((_bump(a, j), i), -1),
            ((a, j), -1),
            ((_bump(a, i), j), 1),
        ]


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True, eq=True)
class Tiling:
    zonotope: ZonotopeSpec
    tiles: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "tiles", frozenset(Tile(t[0], t[1], tuple(t[2])) for t in self.tiles))

    @cached_property
    def key(self) -> tuple[Tile, ...]:
        """Canonical form: the sorted tile list."""
        return tuple(sorted(self.tiles))

    def __lt__(self, other: Tiling) -> bool:
        return self.key < other.key

    def __len__(self):
        return len(self.tiles)

    @cached_property
    def edge_map(self) -> dict:
        """``(start, direction) -> {side: tile}``."""
        m = defaultdict(dict)
        for t in self.tiles:
            for e, side in t.edges():
                if side in m[e]:
                    raise InvalidTiling(f"two tiles on the same side of edge {e}")
                m[e][side] = t
        return dict(m)

    def family_tiles(self, f: int) -> list[Tile]:
        return sorted(t for t in self.tiles if f in (t.i, t.j))

    def to_json(self) -> dict:
        return {
            "zonotope": self.zonotope.to_json(),
            "tiles": [{"families": [t.i, t.j], "anchor": list(t.anchor)} for t in self.key],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> Tiling:
        if isinstance(data, str):
            data = json.loads(data)
        z = ZonotopeSpec.from_json(data["zonotope"])
        return cls(z, frozenset(Tile(t["families"][0], t["families"][1], tuple(t["anchor"])) for t in data["tiles"]))


# ---------------------------------------------------------------------------
# validation


def validate(t: Tiling) -> Check:
    """Exact-cover check; the witness names the first failed check.

    Checks, in order: tile shape and bounds, tile count per generator pair,
    one crossing per pair of de Bruijn lines of distinct families, and edge
    matching (interior edges shared by two tiles on opposite sides, the
    boundary of the zonotope covered once from the inside, nothing else).
    Under these conditions the tiles cover the zonotope exactly.
    """
    z = t.zonotope
    D, l = z.D, z.multiplicities
    for tile in t.key:
        if not (0 <= tile.i < tile.j < D) or len(tile.anchor) != D:
            return Check(False, f"malformed tile {tile}")
        for c in tile.corners():
            if any(not 0 <= c[k] <= l[k] for k in range(D)):
                return Check(False, f"tile {tile} leaves the zonotope")
    if len(t.tiles) != z.tile_count:
        return Check(False, f"{len(t.tiles)} tiles, expected {z.tile_count}")
    crossings = defaultdict(int)
    for tile in t.tiles:
        crossings[(tile.i, tile.j, tile.anchor[tile.i], tile.anchor[tile.j])] += 1
    for i in range(D):
        for j in range(i + 1, D):
            for r in range(l[i]):
                for s in range(l[j]):
                    if crossings[(i, j, r, s)] != 1:
                        return Check(False, f"lines ({i},{r}) and ({j},{s}) cross {crossings[(i, j, r, s)]} times")
    try:
        emap = t.edge_map
    except InvalidTiling as exc:
        return Check(False, f"overlap: {exc}")
    boundary = z.boundary
    for e, sides in emap.items():
        if e in boundary:
            if set(sides) != {boundary[e]}:
                return Check(False, f"boundary edge {e} covered from outside")
        elif len(sides) != 2:
            return Check(False, f"gap at edge {e}")
    for e in boundary:
        if e not in emap:
            return Check(False, f"boundary edge {e} uncovered")
    return Check(True)


def require_valid(t: Tiling) -> Tiling:
    check = validate(t)
    if not check:
        raise InvalidTiling(check.witness)
    return t


# ---------------------------------------------------------------------------
# standard tilings


def grid_tiling(spec: ZonotopeSpec) -> Tiling:
    """The unique tiling of a parallelogram (two generators)."""
    if spec.D != 2:
        raise ValueError("grid_tiling needs exactly two generators")
    l0, l1 = spec.multiplicities
    return Tiling(spec, frozenset(Tile(0, 1, (x, y)) for x in range(l0) for y in range(l1)))


def extreme_tiling(spec: ZonotopeSpec, top: bool = False) -> Tiling:
    """Bottom (or top) of the flip order, written down directly.

    Tile ``{i, j}`` with ranks ``(r, s)`` gets ``a_k = l_k`` exactly for the
    families strictly between ``i`` and ``j`` (bottom) or strictly outside
    them (top), and ``a_k = 0`` otherwise.
    """
    D, l = spec.D, spec.multiplicities
    tiles = set()
    for i in range(D):
        for j in range(i + 1, D):
            for r in range(l[i]):
                for s in range(l[j]):
                    a = []
                    for k in range(D):
                        inside = i < k < j
                        a.append(r if k == i else s if k == j else (l[k] if inside != top else 0))
                    tiles.add(Tile(i, j, tuple(a)))
    return Tiling(spec, frozenset(tiles))


def plane_partition_to_tiling(parts, spec: ZonotopeSpec) -> Tiling:
    """Project a stack of unit cubes onto the three rhombus orientations.

    ``parts`` is an ``l_0 x l_1`` array (or its row-major flattening) with
    entries at most ``l_2``, weakly decreasing along rows and columns.  Cube
    ``(i, j, k)`` (0-based, ``k < parts[i][j]``) occupies the lifted unit cube
    with lower corner ``(i, l_1 - 1 - j, k)``.  A tile is every unit square
    between a filled cube and an empty one, where the filled region is
    extended past the box on the lower side of each axis.
    """
    if spec.D != 3:
        raise ValueError("plane partitions project onto tilings with three generators")
    l0, l1, l2 = spec.multiplicities
    if parts and not isinstance(parts[0], (list, tuple)):
        parts = parts_to_array(parts, (l0, l1))
    if len(parts) != l0 or any(len(row) != l1 for row in parts):
        raise ValueError(f"expected a {l0}x{l1} array")
    for i in range(l0):
        for j in range(l1):
            x = parts[i][j]
            if not 0 <= x <= l2:
                raise InvalidPartition(f"entry {x} out of range at {(i, j)}")
            if (i and parts[i - 1][j] < x) or (j and parts[i][j - 1] < x):
                raise InvalidPartition(f"array is not a plane partition at {(i, j)}")
    size = (l0, l1, l2)
    # axis 1 runs against the cube order (y = l1 - 1 - j)
    lower_is_negative = (True, False, True)

    def filled(c):
        for axis in range(3):
            if c[axis] < 0:
                return lower_is_negative[axis]
            if c[axis] >= size[axis]:
                return not lower_is_negative[axis]
        x, y, z = c
        return z < parts[x][l1 - 1 - y]

    tiles = set()
    for axis in range(3):
        a, b = [k for k in range(3) if k != axis]
        for m in range(size[axis] + 1):
            for u in range(size[a]):
                for v in range(size[b]):
                    cell = [0, 0, 0]
                    cell[axis], cell[a], cell[b] = m, u, v
                    below = list(cell)
                    below[axis] -= 1
                    lo, hi = (below, cell) if lower_is_negative[axis] else (cell, below)
                    if filled(lo) and not filled(hi):
                        tiles.add(Tile(a, b, tuple(cell)))
    return Tiling(spec, frozenset(tiles))


# ---------------------------------------------------------------------------
# de Bruijn lines and dual graphs


def line_side(family: int, pivot: int) -> int:
    """Side of a family-``family`` edge that its oriented de Bruijn line moves toward.

    Lines of families below ``pivot`` head right of their generator (-1), the
    others head left (+1).  With a distinguished family ``F`` (``pivot = F``
    in the full tiling, or the insertion position of ``F`` in the tiling
    with ``F`` deleted), following any line never increases ``a_F``.
    """
    return -1 if family < pivot else 1


class DeBruijnLine(NamedTuple):
    family: int
    rank: int
    worm: tuple[Tile, ...]


def _other(tile: Tile, f: int) -> int:
    return tile.j if tile.i == f else tile.i


def _exit_edge(tile: Tile, start: tuple[int, ...], f: int) -> tuple[int, ...]:
    m = _other(tile, f)
    return _bump(tile.anchor, m) if start == tile.anchor else tile.anchor


def de_bruijn_lines(t: Tiling, pivot: int | None = None) -> list[DeBruijnLine]:
    """All lines, family by family, each worm listed along its orientation."""
    z = t.zonotope
    D, l = z.D, z.multiplicities
    pivot = D if pivot is None else pivot
    emap = t.edge_map
    lines = []
    for f in range(D):
        s = line_side(f, pivot)
        for r in range(l[f]):
            if s == 1:
                start = tuple(l[k] if k < f else r if k == f else 0 for k in range(D))
            else:
                start = tuple(0 if k < f else r if k == f else l[k] for k in range(D))
            worm = []
            edge = start
            while True:
                tile = emap.get((edge, f), {}).get(s)
                if tile is None:
                    break
                worm.append(tile)
                edge = _exit_edge(tile, edge, f)
            lines.append(DeBruijnLine(f, r, tuple(worm)))
    return lines


@dataclass(frozen=True)
class OrientedDualGraph:
    """Dual graph: vertex ``k`` is ``tiles[k]``; edges follow oriented de Bruijn lines."""

    tiles: tuple[Tile, ...]
    dag: Dag
    pivot: int

    @cached_property
    def index(self) -> dict[Tile, int]:
        return {t: k for k, t in enumerate(self.tiles)}


def dual_graph(t: Tiling, pivot: int | None = None) -> OrientedDualGraph:
    """Tiles sharing an edge, joined in the direction of the line through that edge.

    ``pivot`` fixes the line orientations (see :func:`line_side`); the
    default orients every line as if the distinguished family came last.
    """
    pivot = t.zonotope.D if pivot is None else pivot
    tiles = t.key
    index = {tile: k for k, tile in enumerate(tiles)}
    edges = []
    for (start, f), sides in t.edge_map.items():
        if len(sides) == 2:
            s = line_side(f, pivot)
            edges.append((index[sides[-s]], index[sides[s]]))
    try:
        dag = Dag(len(tiles), sorted(edges))
    except CycleError as exc:
        raise CyclicOrientation(str(exc)) from None
    return OrientedDualGraph(tiles, dag, pivot)


# ---------------------------------------------------------------------------
# flips


class FlipSite(NamedTuple):
    """An elementary hexagon ``base + [0,1](v_i + v_j + v_k)`` tiled by three tiles.

    ``upper`` says which of its two tilings is present: False for the one
    with inner vertex ``base + e_j``, True for inner vertex
    ``base + e_i + e_k``.  ``direction`` is +1 for a forward flip in the
    frame it was listed in.
    """

    triple: tuple[int, int, int]
    base: tuple[int, ...]
    upper: bool
    direction: int

    def tiles(self) -> tuple[Tile, Tile, Tile]:
        return hexagon_tiles(self.triple, self.base, self.upper)

    def reversed(self) -> FlipSite:
        return FlipSite(self.triple, self.base, not self.upper, -self.direction)


def hexagon_tiles(triple, base, upper: bool) -> tuple[Tile, Tile, Tile]:
    i, j, k = triple
    b = tuple(base)
    if not upper:
        return Tile(i, j, b), Tile(j, k, b), Tile(i, k, _bump(b, j))
    return Tile(i, k, b), Tile(i, j, _bump(b, k)), Tile(j, k, _bump(b, i))


def frame_sign(triple: Sequence[int], pivot: int | None, D: int) -> int:
    """Orientation of a triple in the frame where family ``pivot`` is distinguished.

    The global frame (``pivot = D - 1``) calls the move from the lower to the
    upper hexagon tiling forward; this adds one grain at the deepest level of
    the recursive partition coordinates.  Making another family ``F`` the
    last one amounts to reversing the generators after ``F`` and cycling
    them to the front, which reverses each triple once per such generator.
    """
    if pivot is None:
        pivot = D - 1
    flips = sum(1 for x in triple if x > pivot)
    return -1 if flips % 2 else 1


def flips(t: Tiling, pivot: int | None = None) -> list[FlipSite]:
    """Every elementary hexagon of ``t``, labelled with its direction in the ``pivot`` frame."""
    D = t.zonotope.D
    tiles = t.tiles
    sites = []
    for tile in t.key:
        i, j, a = tile
        for k in range(j + 1, D):
            if Tile(j, k, a) in tiles and Tile(i, k, _bump(a, j)) in tiles:
                sign = frame_sign((i, j, k), pivot, D)
                sites.append(FlipSite((i, j, k), a, False, sign))
            if a[k] > 0:
                b = _bump(a, k, -1)
                if Tile(i, k, b) in tiles and Tile(j, k, _bump(b, i)) in tiles:
                    sign = frame_sign((i, j, k), pivot, D)
                    sites.append(FlipSite((i, j, k), b, True, -sign))
    return sorted(sites)


def apply_flip(t: Tiling, site: FlipSite) -> Tiling:
    old = hexagon_tiles(site.triple, site.base, site.upper)
    if not all(x in t.tiles for x in old):
        raise InvalidSite(f"{site} is not a hexagon of this tiling")
    new = hexagon_tiles(site.triple, site.base, not site.upper)
    return Tiling(t.zonotope, (t.tiles - set(old)) | set(new))


def neighbours(t: Tiling, pivot: int | None = None) -> list[tuple[FlipSite, Tiling]]:
    return [(s, apply_flip(t, s)) for s in flips(t, pivot)]


# ---------------------------------------------------------------------------
# family deletion and the partition correspondence


def _drop(a: Sequence[int], f: int) -> tuple[int, ...]:
    return tuple(a[:f]) + tuple(a[f + 1:])


def _reindex(x: int, f: int) -> int:
    return x - 1 if x > f else x


def delete_family(t: Tiling, f: int) -> Tiling:
    """Remove the worms of family ``f`` and close the gaps.

    Each remaining tile slides by ``-a_f v_f``, which in lifted coordinates
    just drops coordinate ``f``; families above ``f`` are renumbered down.
    """
    if t.zonotope.D < 3:
        raise ValueError("deleting a family needs at least three generators")
    tiles = frozenset(
        Tile(_reindex(x.i, f), _reindex(x.j, f), _drop(x.anchor, f)) for x in t.tiles if f not in (x.i, x.j)
    )
    return Tiling(t.zonotope.without(f), tiles)


@dataclass(frozen=True)
class TilingPartition:
    """A tiling seen as a partition over the dual graph of its reduced tiling."""

    reduced: Tiling
    graph: OrientedDualGraph
    problem: PartitionProblem
    parts: tuple[int, ...]
    distinguished: int


def tiling_to_partition(t: Tiling, distinguished: int | None = None) -> TilingPartition:
    """The map from tilings to partitions over the reduced tiling's dual graph.

    The part of a non-distinguished tile is the number of distinguished
    lines crossed when leaving it along either of its own (oriented) lines;
    both counts are computed and must agree.
    """
    z = t.zonotope
    D = z.D
    F = D - 1 if distinguished is None else distinguished
    if D < 3:
        raise ValueError("the partition map needs at least three generators")
    reduced = delete_family(t, F)
    graph = dual_graph(reduced, pivot=F)
    counts = {}
    for line in de_bruijn_lines(t, pivot=F):
        if line.family == F:
            continue
        crossed = sum(1 for x in line.worm if F in (x.i, x.j))
        for x in line.worm:
            if F in (x.i, x.j):
                crossed -= 1
                continue
            if x in counts and counts[x] != crossed:
                raise OrientationInconsistent(f"tile {x}: {counts[x]} vs {crossed} crossings")
            counts[x] = crossed
    parts = [0] * len(graph.tiles)
    for x, w in counts.items():
        parts[graph.index[Tile(_reindex(x.i, F), _reindex(x.j, F), _drop(x.anchor, F))]] = w
    problem = PartitionProblem(graph.dag, z.multiplicities[F])
    parts = tuple(parts)
    if not is_valid(problem, parts):
        raise OrientationInconsistent(f"crossing counts {parts} violate the dual graph order")
    return TilingPartition(reduced, graph, problem, parts, F)


def partition_to_tiling(
    reduced: Tiling,
    parts: Sequence[int],
    height: int,
    position: int | None = None,
    angle: float | None = None,
) -> Tiling:
    """Insert ``height`` lines of a new family at ``position`` following ``parts``.

    Tile ``k`` of the reduced tiling (canonical order) is translated by
    ``parts[k] * v_new``; the new family's tiles are stacked along every
    edge, between the parts on its two sides.  Outside the zonotope the
    part is taken as ``height`` on the side where the new coordinate is
    larger and 0 on the other.
    """
    z = reduced.zonotope
    F = z.D if position is None else position
    graph = dual_graph(reduced, pivot=F)
    problem = PartitionProblem(graph.dag, height)
    parts = tuple(parts)
    if len(parts) != len(graph.tiles) or not is_valid(problem, parts):
        raise InvalidPartition(f"{parts} is not a solution on the dual graph")
    spec = z.with_family(F, height, angle)

    def lift(x: Tile, value: int) -> Tile:
        i = x.i + (x.i >= F)
        j = x.j + (x.j >= F)
        return Tile(i, j, x.anchor[:F] + (value,) + x.anchor[F:])

    tiles = {lift(x, parts[k]) for k, x in enumerate(graph.tiles)}
    boundary = z.boundary
    for (start, f), sides in reduced.edge_map.items():
        larger = 1 if f < F else -1
        value = {s: parts[graph.index[x]] for s, x in sides.items()}
        if len(value) == 1:
            outside = -next(iter(value))
            assert boundary[(start, f)] == -outside
            value[outside] = height if outside == larger else 0
        lo, hi = sorted(value.values())
        g = f + (f >= F)
        for s in range(lo, hi):
            anchor = start[:F] + (s,) + start[F:]
            i, j = sorted((g, F))
            tiles.add(Tile(i, j, anchor))
    return Tiling(spec, frozenset(tiles))


# ---------------------------------------------------------------------------
# enumeration


def enumerate_tilings(spec: ZonotopeSpec, max_tilings: int = DEFAULT_MAX_TILINGS) -> list[Tiling]:
    """All tilings, built family by family.

    Three families come from plane partitions; each further family ``k`` is
    inserted into every tiling of the first ``k`` families through every
    partition over its dual graph with height ``l_k``.  Sorted canonically.
    """
    l, angles = spec.multiplicities, spec.angles
    if spec.D == 2:
        return [grid_tiling(spec)]
    first = ZonotopeSpec(l[:3], angles[:3])
    pp = enumerate_partitions(hypersolid_problem(2, (l[0], l[1]), l[2]), max_elements=max_tilings)
    level = [plane_partition_to_tiling(p, first) for p in pp.elements]
    for k in range(3, spec.D):
        nxt = []
        for reduced in level:
            graph = dual_graph(reduced, pivot=k)
            budget = max_tilings - len(nxt)
            sols = enumerate_partitions(PartitionProblem(graph.dag, l[k]), max_elements=max(budget, 0))
            for p in sols.elements:
                nxt.append(partition_to_tiling(reduced, p, l[k], position=k, angle=angles[k]))
            if len(nxt) > max_tilings:
                raise SizeExceeded(f"more than {max_tilings} tilings")
        level = nxt
    return sorted(level)


def flip_closure(start: Tiling, max_tilings: int = DEFAULT_MAX_TILINGS) -> list[Tiling]:
    """Every tiling reachable from ``start`` by flips in either direction."""
    seen = {start}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for _, u in neighbours(t):
            if u not in seen:
                seen.add(u)
                if len(seen) > max_tilings:
                    raise SizeExceeded(f"more than {max_tilings} tilings")
                queue.append(u)
    return sorted(seen)


# ---------------------------------------------------------------------------
# rendering


_PALETTE = ["#e6b333", "#3366e6", "#999966", "#99ff99", "#b34d4d", "#80b300", "#809900", "#e6b3b3",
            "#6680b3", "#66991a", "#ff99e6", "#ccff1a", "#ff1a66", "#e6331a", "#33ffcc"]


def to_svg(t: Tiling, distinguished: int | None = None, scale: float = 40.0) -> str:
    """One polygon per tile, coloured by generator pair; the distinguished family is shaded."""
    z = t.zonotope
    pts = {c: z.point(c) for tile in t.tiles for c in tile.corners()}
    xs = [p[0] for p in pts.values()] or [0.0]
    ys = [p[1] for p in pts.values()] or [0.0]
    pad = 0.5
    x0, y1 = min(xs) - pad, max(ys) + pad
    width, height = (max(xs) - min(xs) + 2 * pad) * scale, (max(ys) - min(ys) + 2 * pad) * scale
    pair_index = {}
    for i in range(z.D):
        for j in range(i + 1, z.D):
            pair_index[(i, j)] = len(pair_index)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" height="{height:.1f}">',
    ]
    for tile in t.key:
        poly = " ".join(f"{(pts[c][0] - x0) * scale:.2f},{(y1 - pts[c][1]) * scale:.2f}" for c in tile.corners())
        colour = _PALETTE[pair_index[(tile.i, tile.j)] % len(_PALETTE)]
        shade = distinguished is not None and distinguished in (tile.i, tile.j)
        fill = "#555555" if shade else colour
        out.append(f'  <polygon points="{poly}" fill="{fill}" stroke="black" stroke-width="1"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
