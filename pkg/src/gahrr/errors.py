"""Exception types shared across backends."""


class DimensionMismatch(ValueError):
    """Operands live in spaces of different dimension."""


class NotInvertible(ArithmeticError):
    """An element has no inverse under the requested product.

    ``index`` is the offending Fourier component for HRR tuples and ``None``
    for zero-magnitude vectors.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class CapacityError(ValueError):
    """More distinct items were requested than the item space can hold."""


class NoMatch(LookupError):
    """Clean-up was given a vector with nothing left to compare."""


class FormatError(ValueError):
    """A serialized item could not be parsed."""


class BackendMismatch(ValueError):
    """Items from different backends (or dimensions) were combined."""
