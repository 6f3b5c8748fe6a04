"""Exception types raised by hillrep."""


class HillrepError(ValueError):
    """Base class for all library errors."""


class DimensionMismatch(HillrepError):
    pass


class InvalidRank(HillrepError):
    pass


class NotStarLinear(HillrepError):
    """The map does not satisfy L(V*) = L(V)* within tolerance."""


class SpanDeficient(HillrepError):
    """Supplied matrices do not span the span of the blocks of L."""


class BiorthogonalityViolation(HillrepError):
    pass


class KernelMismatch(HillrepError):
    pass


class DifferentMaps(HillrepError):
    pass


class MissingProvenance(HillrepError):
    """A representation lacks the basis selection needed for comparison."""
