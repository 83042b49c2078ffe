import pytest

from zonolat.poset import is_distributive, is_lattice
from zonolat.partitions import enumerate_partitions
from zonolat.structure import (
    block_extremes,
    block_hasse_dot,
    block_order,
    check_decomposition,
    check_extreme_flips,
    decompose,
    flip_graph,
    flip_graph_dot,
    gradedness_check,
    is_connected,
    lattice_failure_witness,
    path_length_spread,
    quotient,
    quotient_edges_from_extremes,
    quotient_edges_full,
    sampled_lattice_witness,
    shortest_flip_path,
    walk,
)
from zonolat.zonotopes import ZonotopeSpec, enumerate_tilings, extreme_tiling, flips, tiling_to_partition

HEX = ZonotopeSpec((1, 1, 1))
BOX = ZonotopeSpec((2, 2, 2))
OCT = ZonotopeSpec((1, 1, 1, 1))
DEC = ZonotopeSpec((1, 1, 1, 1, 1))
DODECAGON = ZonotopeSpec((1,) * 6)


@pytest.fixture(scope="module")
def graphs():
    specs = [HEX, ZonotopeSpec((2, 1, 1)), BOX, OCT, ZonotopeSpec((2, 1, 1, 1)), DEC]
    return {z.multiplicities: flip_graph(z) for z in specs}


def test_flip_graph_sizes(graphs):
    hexagon = graphs[(1, 1, 1)]
    assert len(hexagon) == 2 and len(hexagon.edges) == 1
    assert len(graphs[(2, 2, 2)]) == 20
    assert len(graphs[(1, 1, 1, 1)]) == 8
    for m, g in graphs.items():
        assert is_connected(g)
        assert sorted(g.tilings) == enumerate_tilings(ZonotopeSpec(m))
        assert g.tilings[0] == extreme_tiling(g.zonotope)


def test_octagon_decomposition():
    graph, dec = decompose(OCT, 3)
    assert len(dec) == 2
    assert sorted(map(len, dec.members)) == [4, 4]
    assert check_decomposition(graph, dec)


def test_three_families_give_one_block(graphs):
    for m in [(1, 1, 1), (2, 1, 1), (2, 2, 2)]:
        for F in range(3):
            graph, dec = decompose(ZonotopeSpec(m), F)
            assert len(dec) == 1
            assert is_distributive(block_order(graph, dec, 0))


def test_three_block_instance():
    # four families with three blocks, found by scanning small multiplicities
    spec = ZonotopeSpec((2, 1, 1, 1))
    for F in (1, 2, 3):
        graph, dec = decompose(spec, F)
        assert len(dec) == 3
        assert check_decomposition(graph, dec)
    dot = flip_graph_dot(*decompose(spec, 3))
    assert dot.count("subgraph cluster_") == 3
    assert "distinguished family 3" in dot


@pytest.mark.parametrize("m", [(1, 1, 1, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1)])
def test_block_structure_for_every_family(m):
    spec = ZonotopeSpec(m)
    for F in range(spec.D):
        graph, dec = decompose(spec, F)
        assert check_decomposition(graph, dec)
        assert check_extreme_flips(graph, dec)
        for b in range(len(dec)):
            top, bottom = block_extremes(graph, dec, b)
            assert set(tiling_to_partition(top, F).parts) <= {m[F]}
            assert set(tiling_to_partition(bottom, F).parts) <= {0}
        assert quotient_edges_from_extremes(graph, dec) == quotient_edges_full(graph, dec)
        q = quotient(spec, F)
        assert len(q.order) == len(q.target)


def test_blocks_match_grain_order():
    spec = ZonotopeSpec((2, 1, 1, 1))
    F = 3
    graph, dec = decompose(spec, F)
    for b in range(len(dec)):
        order = block_order(graph, dec, b)
        parts = {t: tiling_to_partition(t, F) for t in order.elements}
        problem = next(iter(parts.values())).problem
        grains = enumerate_partitions(problem)
        assert sorted(p.parts for p in parts.values()) == sorted(grains.elements)
        mapped = {(parts[order.elements[i]].parts, parts[order.elements[j]].parts) for i, j in order.covers}
        assert mapped == {(grains.elements[i], grains.elements[j]) for i, j in grains.covers}


def test_singleton_block_extremes():
    spec = ZonotopeSpec((1, 1, 2))
    graph, dec = decompose(spec, 0)
    for b in range(len(dec)):
        top, bottom = block_extremes(graph, dec, b)
        assert (top == bottom) == (len(dec.members[b]) == 1)


def test_quotients():
    q = quotient(OCT)
    assert len(q.order) == 2
    assert len(quotient(DEC).order) == 8
    graph, dec = decompose(HEX)
    assert len(dec) == 1


def test_shortest_paths():
    t = extreme_tiling(BOX)
    assert shortest_flip_path(t, t) == []
    top = extreme_tiling(BOX, top=True)
    path = shortest_flip_path(t, top)
    assert len(path) == 8
    assert walk(t, path) == top
    assert len(shortest_flip_path(top, t)) == 8
    a, b = enumerate_tilings(OCT)[1], enumerate_tilings(OCT)[6]
    assert len(shortest_flip_path(a, b)) == len(shortest_flip_path(b, a))


def test_gradedness(graphs):
    for m, g in graphs.items():
        assert gradedness_check(g)
        assert path_length_spread(g)
    rank = gradedness_check(graphs[(2, 2, 2)]).witness
    assert max(rank.values()) - min(rank.values()) == 8
    hexagon = graphs[(1, 1, 1)]
    assert len(hexagon.edges) == 1 and path_length_spread(hexagon)


def test_lattice_witness_on_hexagons(graphs):
    for m in [(1, 1, 1), (2, 1, 1), (2, 2, 2)]:
        assert lattice_failure_witness(graphs[m]) is None
        assert is_lattice(graphs[m].order)


def test_octagon_and_decagon_lattice_status(graphs):
    # recorded by oracle run: both are lattices
    assert lattice_failure_witness(graphs[(1, 1, 1, 1)]) is None
    assert lattice_failure_witness(graphs[(1, 1, 1, 1, 1)]) is None


@pytest.mark.slow
def test_dodecagon_is_not_a_lattice():
    graph = flip_graph(DODECAGON)
    assert len(graph) == 908
    w = lattice_failure_witness(graph)
    assert w is not None and w.exhaustive
    i, j = graph.index[w.first], graph.index[w.second]
    assert graph.order.meet_index(i, j) is None
    lower = graph.order.down[i] & graph.order.down[j]
    assert {graph.tilings[k] for k in graph.order.maximal(lower)} == set(w.maximal_lower_bounds)
    assert len(w.maximal_lower_bounds) >= 2


@pytest.mark.slow
def test_sampled_witness_agrees_with_the_full_order():
    graph = flip_graph(DODECAGON)
    for seed in range(3):
        w = sampled_lattice_witness(DODECAGON, seed=seed)
        assert w is not None and not w.exhaustive
        i, j = graph.index[w.first], graph.index[w.second]
        assert graph.order.meet_index(i, j) is None
        lower = graph.order.down[i] & graph.order.down[j]
        assert {graph.tilings[k] for k in graph.order.maximal(lower)} == set(w.maximal_lower_bounds)
    assert lattice_failure_witness(DODECAGON, max_tilings=100) is not None


def test_sampled_search_finds_nothing_on_a_lattice():
    assert sampled_lattice_witness(BOX, seed=1, samples=20) is None


def test_block_dot():
    graph, dec = decompose(OCT)
    text = block_hasse_dot(graph, dec, 0)
    assert text.count("->") == len(block_order(graph, dec, 0).covers)
    assert len(flips(graph.tilings[0])) == len(graph.adjacency[0])
