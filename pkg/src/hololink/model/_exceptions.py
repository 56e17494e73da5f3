class OutOfRangeError(ValueError):
    """Raise when an input feature is outside the [0, 1] range."""


class NumericalFailureError(ArithmeticError):
    """Raise when a factorization fails, which signals non-finite input."""


class EmptyTestSetError(ValueError):
    """Raise when a classifier is evaluated on an empty test set."""


class ModelFormatError(ValueError):
    """Raise when serialized classifier bytes do not follow the format."""
