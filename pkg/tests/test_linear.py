from itertools import product

import pytest

from zonolat.errors import SizeExceeded, WeightMismatch
from zonolat.linear import (
    BRYLAWSKI,
    SPM,
    all_partitions,
    brylawski_moves,
    brylawski_successors,
    dominance_leq,
    generate,
    lb_meet,
    normalize,
    pi_embedding,
    prefix_sums,
    spm_successors,
    suffix_inf,
)
from zonolat.poset import brute_meet, covering_relation, is_distributive, is_lattice


def _pad(seq, n):
    return tuple(seq) + (0,) * (n - len(seq))


def test_normalize():
    assert normalize([3, 1, 0, 0]) == (3, 1)
    with pytest.raises(ValueError):
        normalize([1, 2])
    with pytest.raises(ValueError):
        normalize([2, -1])


def test_spm_successors():
    assert spm_successors((7,)) == [(6, 1)]
    assert spm_successors((1, 1, 1)) == []
    assert spm_successors((4, 2, 1)) == [(3, 3, 1)]


def test_brylawski_successors():
    assert brylawski_successors((4, 2, 1)) == [(3, 3, 1), (4, 1, 1, 1)]
    assert brylawski_moves((4, 2, 1)) == [(1, (3, 3, 1)), (2, (4, 1, 1, 1))]
    for n in range(2, 9):
        assert brylawski_successors((n,)) == [(n - 1, 1)]
    assert brylawski_successors((2, 2)) == [(2, 1, 1)]


def test_generate_counts():
    lb7 = generate(7, BRYLAWSKI)
    assert len(lb7) == 15
    assert set(lb7.elements) == set(all_partitions(7))
    assert len(all_partitions(7)) == 15
    assert generate(1, SPM).elements == ((1,),)
    assert generate(1, BRYLAWSKI).elements == ((1,),)
    for n in range(1, 11):
        assert set(generate(n, SPM).elements) <= set(generate(n, BRYLAWSKI).elements)


def test_generate_guard():
    with pytest.raises(SizeExceeded):
        generate(26, BRYLAWSKI)
    with pytest.raises(SizeExceeded):
        generate(12, SPM, max_n=10)
    with pytest.raises(ValueError):
        generate(3, "avalanche")


def test_transition_labels_are_columns():
    labels = {}
    generate(4, BRYLAWSKI, labels=labels)
    assert labels[((3, 1), (4,))] == 1
    assert labels[((2, 1, 1), (2, 2))] == 2


@pytest.mark.parametrize("n", range(1, 11))
def test_generated_orders_are_dominance_lattices(n):
    for rules in (SPM, BRYLAWSKI):
        assert is_lattice(generate(n, rules))
    lb = generate(n, BRYLAWSKI)
    for a, b in product(lb.elements, repeat=2):
        assert lb.leq(a, b) == dominance_leq(a, b)


def test_brylawski_covers_are_dominance_covers():
    for n in range(1, 11):
        lb = generate(n, BRYLAWSKI)
        parts = all_partitions(n)
        covers = set()
        for a, b in product(parts, repeat=2):
            if a != b and dominance_leq(a, b):
                between = [c for c in parts if c not in (a, b) and dominance_leq(a, c) and dominance_leq(c, b)]
                if not between:
                    covers.add((a, b))
        assert covering_relation(lb) == covers


def test_lb7_is_not_distributive():
    check = is_distributive(generate(7, BRYLAWSKI))
    assert not check
    assert check.witness == ((3, 3, 1), (4, 1, 1, 1), (3, 2, 2))


def test_dominance_examples():
    assert dominance_leq((3, 3, 1), (4, 2, 1))
    assert not dominance_leq((4, 2, 1), (3, 3, 1))
    for b in all_partitions(6):
        assert dominance_leq(b, b)
        assert dominance_leq(b, (6,))
    with pytest.raises(WeightMismatch):
        dominance_leq((2,), (1, 1, 1))
    assert prefix_sums((4, 2, 1)) == (4, 6, 7)


def test_lb_meet_matches_oracle():
    lb7 = generate(7, BRYLAWSKI)
    assert lb_meet((3, 3, 1), (4, 1, 1, 1)) == brute_meet(lb7, (3, 3, 1), (4, 1, 1, 1)) == (3, 2, 1, 1)
    for n in range(1, 10):
        lb = generate(n, BRYLAWSKI)
        for a, b in product(lb.elements, repeat=2):
            assert lb_meet(a, b) == brute_meet(lb, a, b)
        for a in lb.elements:
            assert lb_meet(a, a) == a
            assert lb_meet((n,), a) == a
    with pytest.raises(WeightMismatch):
        lb_meet((2,), (1,))


def test_suffix_inf_examples():
    assert suffix_inf((2, 2), (1, 1, 1)) == (2, 1, 1)
    assert suffix_inf((3, 2, 1), (3, 2, 1)) == (3, 2, 1)
    assert suffix_inf((5,), (3,)) == (5,)


def test_pi_embedding_examples():
    assert pi_embedding((2, 2)) == (4, 2)
    assert pi_embedding((1, 1, 1)) == (3, 2, 1)
    assert pi_embedding(()) == ()


def test_sup_is_not_preserved():
    pa, pb = pi_embedding((2, 2)), pi_embedding((1, 1, 1))
    psup = pi_embedding((2, 1))
    low = tuple(map(min, _pad(pa, 3), _pad(pb, 3)))
    assert (pa, pb, psup) == ((4, 2), (3, 2, 1), (3, 1))
    assert normalize(low) == (3, 2)
    assert psup != normalize(low)


@pytest.mark.parametrize("n", range(1, 9))
def test_embedding_and_inf_preservation(n):
    parts = all_partitions(n)
    for a, b in product(parts, repeat=2):
        pa, pb = _pad(pi_embedding(a), n), _pad(pi_embedding(b), n)
        # order reversing: more prefix weight means less suffix weight
        assert dominance_leq(a, b) == all(x >= y for x, y in zip(pa, pb))
        pm = _pad(pi_embedding(lb_meet(a, b)), n)
        assert pm == tuple(map(max, pa, pb))


def test_transitions_preserve_weight():
    for a in all_partitions(9):
        assert all(sum(b) == 9 for b in brylawski_successors(a))
