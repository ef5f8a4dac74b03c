"""Exception hierarchy shared across the package."""


class NetIdentError(Exception):
    """Base class for every error raised by netident."""


class UnknownNodeError(NetIdentError, KeyError):
    pass


class GraphError(NetIdentError, ValueError):
    """Structural problem with a graph: self-loop, duplicate edge, bad id."""


class CycleError(GraphError):
    """The graph has a directed cycle; ``cycle`` lists one offending cycle."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("graph has a cycle: " + " -> ".join(map(str, self.cycle + self.cycle[:1])))


class InvalidEdgeFunction(NetIdentError, ValueError):
    """An edge carries the zero polynomial (an edge must be a nonzero function)."""


class DuplicateAbscissa(NetIdentError, ValueError):
    pass


class InconsistentSamples(NetIdentError, ValueError):
    """Samples do not fit any polynomial within the degree bound."""


class NotAShift(NetIdentError, ValueError):
    """A polynomial is not an argument shift of the reference polynomial."""


class AmbiguityError(NetIdentError):
    """Identification cannot be guaranteed from the given measurements."""


class DegreeTooLow(AmbiguityError, ValueError):
    """Shift extraction needs degree >= 2; for linear maps shift and offset coincide."""


class UnreachedEdge(NetIdentError):
    """An edge was not reached by any identification route."""


class SizeLimitExceeded(NetIdentError):
    """Expanded polynomial exceeded the configured term cap."""
