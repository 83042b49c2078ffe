"""Exception hierarchy shared by every module."""


class ZonolatError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class CycleError(ZonolatError):
    """A graph that must be acyclic contains a directed cycle."""


class SizeExceeded(ZonolatError):
    """An enumeration guard tripped before the enumeration finished."""


class NotALattice(ZonolatError):
    pass


class NotAnIdeal(ZonolatError):
    pass


class VertexMismatch(ZonolatError):
    pass


class UnboundedHeight(ZonolatError):
    pass


class WeightMismatch(ZonolatError):
    pass


class CyclicOrientation(ZonolatError):
    pass


class OrientationInconsistent(ZonolatError):
    pass


class InvalidSite(ZonolatError):
    pass


class InvalidPartition(ZonolatError):
    pass


class InvalidTiling(ZonolatError):
    pass


class NotUnique(ZonolatError):
    pass


class IsomorphismFailure(ZonolatError):
    pass
