"""Partition lattices on DAGs, sandpile dynamics and rhombic tilings of 2D zonotopes."""
from .errors import ZonolatError
from .partitions import PartitionProblem
from .poset import Dag, FiniteOrder
from .zonotopes import Tile, Tiling, ZonotopeSpec

__version__ = "0.1.0"
