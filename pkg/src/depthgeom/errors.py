class DepthGeomError(Exception):
    """Base class for library errors."""


class InputError(DepthGeomError, ValueError):
    """Invalid arguments: bad ranges, dimension mismatch, degenerate geometry."""


class UnsupportedMeasure(DepthGeomError, TypeError):
    """The operation is not available for this kind of measure."""


class NumericalError(DepthGeomError, RuntimeError):
    """A root find, bracket or optimization failed to converge."""
