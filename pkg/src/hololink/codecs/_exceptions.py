class LengthMismatchError(ValueError):
    """Raise when two hypervectors that must have equal lengths do not."""


class KeyShapeMismatchError(ValueError):
    """Raise when a key set does not fit the classifier being compressed."""


class MetaMismatchError(ValueError):
    """Raise when a key set does not match the metadata of a compressed payload."""


class InvalidRatioError(ValueError):
    """Raise when a compression ratio is outside the range a codec accepts."""


class SvdFailureError(ArithmeticError):
    """Raise when the singular value decomposition does not converge."""


class ShapeMismatchError(ValueError):
    """Raise when the factors of a payload do not fit its metadata."""


class CorruptStreamError(ValueError):
    """Raise when a compressed byte stream cannot be inflated."""


class InvalidLevelsError(ValueError):
    """Raise when a quantizer is asked for fewer than 2 levels."""


class PayloadFormatError(ValueError):
    """Raise when serialized payload bytes do not follow the wire format."""
