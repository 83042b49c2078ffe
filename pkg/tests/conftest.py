import pytest

from zonolat.poset import Dag

G1_EDGES = [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]


@pytest.fixture
def g1():
    return Dag(5, G1_EDGES)
