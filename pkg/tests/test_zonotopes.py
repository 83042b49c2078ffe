from itertools import combinations

import pytest

from zonolat.errors import InvalidPartition, InvalidSite, SizeExceeded
from zonolat.partitions import PartitionProblem, enumerate_partitions, hypersolid_problem
from zonolat.zonotopes import (
    Tile,
    Tiling,
    ZonotopeSpec,
    apply_flip,
    de_bruijn_lines,
    delete_family,
    dual_graph,
    enumerate_tilings,
    extreme_tiling,
    flip_closure,
    flips,
    grid_tiling,
    neighbours,
    partition_to_tiling,
    plane_partition_to_tiling,
    tiling_to_partition,
    to_svg,
    validate,
)

HEX = ZonotopeSpec((1, 1, 1))
OCT = ZonotopeSpec((1, 1, 1, 1))
DEC = ZonotopeSpec((1, 1, 1, 1, 1))
CORPUS = [(1, 1, 1), (2, 1, 1), (2, 2, 2), (1, 1, 1, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1)]


@pytest.fixture(scope="module")
def tilings():
    return {m: enumerate_tilings(ZonotopeSpec(m)) for m in CORPUS}


def test_spec_checks():
    with pytest.raises(ValueError):
        ZonotopeSpec((1,))
    with pytest.raises(ValueError):
        ZonotopeSpec((1, 0, 1))
    with pytest.raises(ValueError):
        ZonotopeSpec((1, 1), angles=(1.0, 0.5))
    assert OCT.tile_count == 6
    assert ZonotopeSpec.from_json(OCT.to_json()) == OCT


def test_hexagon_tilings_are_valid():
    ts = enumerate_tilings(HEX)
    assert len(ts) == 2
    assert all(validate(t) for t in ts)
    assert all(len(t) == 3 for t in ts)


def test_validate_detects_defects():
    t = extreme_tiling(OCT)
    gap = Tiling(OCT, t.tiles - {t.key[0]})
    assert not validate(gap)
    moved = Tiling(OCT, (t.tiles - {t.key[0]}) | {Tile(0, 1, (0, 0, 1, 1))})
    assert not validate(moved)
    assert validate(t)


def test_plane_partitions_project_to_distinct_tilings():
    spec = ZonotopeSpec((2, 2, 2))
    pps = enumerate_partitions(hypersolid_problem(2, (2, 2), 2)).elements
    assert len(pps) == 20
    ts = {plane_partition_to_tiling(p, spec) for p in pps}
    assert len(ts) == 20
    assert all(validate(t) for t in ts)
    assert plane_partition_to_tiling([[0, 0], [0, 0]], spec) == extreme_tiling(spec)
    assert plane_partition_to_tiling([[2, 2], [2, 2]], spec) == extreme_tiling(spec, top=True)
    with pytest.raises(InvalidPartition):
        plane_partition_to_tiling([[0, 1], [0, 0]], spec)


def test_hexagon_lines():
    lines = de_bruijn_lines(extreme_tiling(HEX))
    assert len(lines) == 3
    assert all(len(line.worm) == 2 for line in lines)


def test_worms_of_a_two_line_family():
    # two lines of family 0, as in the worm picture: they share no tile
    spec = ZonotopeSpec((2, 1, 1))
    for t in enumerate_tilings(spec):
        a, b = [line for line in de_bruijn_lines(t) if line.family == 0]
        assert not set(a.worm) & set(b.worm)
        assert set(a.worm) | set(b.worm) == set(t.family_tiles(0))
        assert all(x.anchor[0] == a.rank for x in a.worm)
        assert len(a.worm) == 2


def test_line_structure_on_corpus(tilings):
    for m, ts in tilings.items():
        for t in ts:
            lines = de_bruijn_lines(t)
            for f, l in enumerate(m):
                assert sum(line.family == f for line in lines) == l
            for x in t.tiles:
                assert sum(x in line.worm for line in lines) == 2
            for p, q in combinations(lines, 2):
                shared = len(set(p.worm) & set(q.worm))
                assert shared == (0 if p.family == q.family else 1)


def test_dual_graph_examples():
    for t in enumerate_tilings(HEX):
        assert dual_graph(t).dag.vertex_count == 3
    g = dual_graph(grid_tiling(ZonotopeSpec((1, 1))))
    assert g.dag.vertex_count == 1 and not g.dag.edges
    for t in enumerate_tilings(OCT):
        for pivot in range(5):
            dual_graph(t, pivot)  # raises CyclicOrientation on a cycle


def test_flip_examples():
    for t in enumerate_tilings(HEX):
        assert len(flips(t)) == 1
    assert flips(grid_tiling(ZonotopeSpec((2, 3)))) == []
    empty = extreme_tiling(ZonotopeSpec((2, 2, 2)))
    assert [s.direction for s in flips(empty)] == [1]


def test_apply_flip_toggles():
    a, b = enumerate_tilings(HEX)
    (site,) = flips(a)
    assert apply_flip(a, site) == b
    assert apply_flip(apply_flip(a, site), site.reversed()) == a
    with pytest.raises(InvalidSite):
        apply_flip(a, site.reversed())


def test_flips_change_three_tiles(tilings):
    for t in tilings[(2, 1, 1, 1)]:
        for site, u in neighbours(t):
            assert len(t.tiles - u.tiles) == 3
            assert validate(u)
            assert apply_flip(u, site.reversed()) == t


def test_monotone_sequence_in_the_box_has_eight_flips():
    spec = ZonotopeSpec((2, 2, 2))
    t, top = extreme_tiling(spec), extreme_tiling(spec, top=True)
    steps = 0
    while t != top:
        site = next(s for s in flips(t) if s.direction == 1)
        t = apply_flip(t, site)
        steps += 1
    assert steps == 8


def test_partition_map_on_extremes():
    assert tiling_to_partition(extreme_tiling(OCT)).parts == (0, 0, 0)
    tp = tiling_to_partition(extreme_tiling(OCT, top=True))
    assert tp.parts == (1, 1, 1)
    assert tp.problem.height == 1


def test_partition_to_tiling_on_a_hexagon():
    # a 3->2 tiling, a partition on its dual graph, and the completed 4->2 tiling
    reduced = extreme_tiling(ZonotopeSpec((1, 1, 1)))
    graph = dual_graph(reduced)
    sols = enumerate_partitions(PartitionProblem(graph.dag, 2)).elements
    mixed = next(p for p in sols if len(set(p)) == 3)
    t = partition_to_tiling(reduced, mixed, 2)
    assert validate(t)
    assert t.zonotope.multiplicities == (1, 1, 1, 2)
    # tiles of V_i are translated by i copies of the new generator
    for k, x in enumerate(graph.tiles):
        assert Tile(x.i, x.j, x.anchor + (mixed[k],)) in t.tiles
    assert delete_family(t, 3) == reduced
    # and back again
    back = tiling_to_partition(t)
    assert back.parts == mixed and back.reduced == reduced


def test_zero_partition_stacks_new_worms_on_one_side():
    reduced = extreme_tiling(HEX)
    t = partition_to_tiling(reduced, (0, 0, 0), 2)
    lifted = {Tile(x.i, x.j, x.anchor + (0,)) for x in reduced.tiles}
    assert lifted <= t.tiles
    assert len(t.tiles - lifted) == 6


def test_partition_to_tiling_rejects_bad_parts():
    with pytest.raises(InvalidPartition):
        partition_to_tiling(extreme_tiling(HEX), (0, 0), 1)
    with pytest.raises(InvalidPartition):
        partition_to_tiling(extreme_tiling(HEX), (3, 3, 3), 2)


@pytest.mark.parametrize("m", [(1, 1, 1, 1), (2, 1, 1, 1), (1, 2, 1, 1), (1, 1, 1, 1, 1)])
def test_round_trip_for_every_family(m, tilings):
    spec = ZonotopeSpec(m)
    ts = tilings.get(m) or enumerate_tilings(spec)
    for F in range(spec.D):
        for t in ts:
            tp = tiling_to_partition(t, F)
            back = partition_to_tiling(tp.reduced, tp.parts, m[F], position=F, angle=spec.angles[F])
            assert back == t


@pytest.mark.parametrize("m", [(1, 1, 1, 1), (1, 1, 1, 1, 1)])
def test_counts_sum_over_reduced_tilings(m, tilings):
    spec = ZonotopeSpec(m)
    reduced = enumerate_tilings(spec.without(spec.D - 1))
    total = sum(len(enumerate_partitions(PartitionProblem(dual_graph(r).dag, m[-1]))) for r in reduced)
    assert total == len(tilings[m])


def test_delete_family_examples(tilings):
    for t in tilings[(1, 1, 1)]:
        d = delete_family(t, 1)
        assert d == grid_tiling(ZonotopeSpec((1, 1), HEX.angles[::2]))
    for t in tilings[(1, 1, 1, 1, 1)]:
        for f in range(5):
            reduced = delete_family(t, f)
            assert validate(reduced)
            for site, u in neighbours(t):
                other = delete_family(u, f)
                if f in site.triple:
                    assert other == reduced
                else:
                    assert other in {v for _, v in neighbours(reduced)}


def test_enumeration_counts(tilings):
    counts = {m: len(ts) for m, ts in tilings.items()}
    assert counts[(1, 1, 1)] == 2
    assert counts[(2, 2, 2)] == 20
    assert counts[(1, 1, 1, 1)] == 8
    assert counts[(1, 1, 1, 1, 1)] == 62
    for m, ts in tilings.items():
        assert flip_closure(extreme_tiling(ZonotopeSpec(m))) == ts
        assert flip_closure(ts[-1]) == ts
    assert len(enumerate_tilings(ZonotopeSpec((1, 2, 1, 2)))) == 76


def test_enumeration_guard():
    with pytest.raises(SizeExceeded):
        enumerate_tilings(DEC, max_tilings=20)
    with pytest.raises(SizeExceeded):
        flip_closure(extreme_tiling(DEC), max_tilings=20)


def test_json_and_svg():
    t = enumerate_tilings(OCT)[3]
    assert Tiling.from_json(t.to_json()) == t
    data = t.to_json()
    assert data["zonotope"]["multiplicities"] == [1, 1, 1, 1]
    assert data["tiles"][0].keys() == {"families", "anchor"}
    svg = to_svg(t, distinguished=3)
    assert svg.count("<polygon") == 6
    assert svg == to_svg(t, distinguished=3)
