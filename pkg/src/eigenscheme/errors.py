"""Exception hierarchy shared by every module."""


class EigenschemeError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(EigenschemeError, ValueError):
    """Shapes, lengths or rings do not match."""


class ValidationError(EigenschemeError, ValueError):
    """An input object violates its invariants."""


class InvalidArgumentError(EigenschemeError, ValueError):
    pass


class UnsupportedFieldError(EigenschemeError):
    """The characteristic polynomial does not split over the rationals."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class GroebnerCapError(EigenschemeError, RuntimeError):
    """Buchberger exceeded its configured pair budget."""


class DegenerateSampleError(EigenschemeError, RuntimeError):
    """A random pencil produced an identically vanishing discriminant."""


class InsufficientSampleError(EigenschemeError, ValueError):
    """A Hilbert sample is too short for its tail to be polynomial."""


class InconsistencyError(EigenschemeError, ValueError):
    """Component data cannot come from any Jordan type."""


class ParseError(EigenschemeError, ValueError):
    pass
