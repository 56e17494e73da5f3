"""Uniform quantization of classifier weights."""

import math

import numpy as np

from hololink.codecs._exceptions import InvalidLevelsError
from hololink.model import ClassifierMatrix


def quantize(classifier: ClassifierMatrix, levels: int) -> ClassifierMatrix:
    """Snap every weight to the nearest of Q uniformly spaced levels.

    The levels are ℓ_k = min + k·(max - min)/(Q - 1) for k = 0..Q-1, taken over the
    whole matrix. Ties go to the lower level. A constant matrix is returned
    unchanged.

    Parameters
    ----------
    classifier : ClassifierMatrix
        The classifier to quantize.
    levels : int
        The number of levels Q, at least 2.

    Returns
    -------
    ClassifierMatrix
        The quantized classifier, with at most Q distinct weight values.

    Raises
    ------
    InvalidLevelsError
        If Q < 2.

    """
    if levels < 2:
        raise InvalidLevelsError(
            f"At least 2 quantization levels are needed, got {levels}."
        )

    weights = classifier.weights
    low, high = float(weights.min()), float(weights.max())
    if low == high:
        return classifier

    step = (high - low) / (levels - 1)
    # ceil(r - 0.5) rounds to nearest, halves down
    k = np.clip(np.ceil((weights - low) / step - 0.5), 0, levels - 1)
    quantized = np.where(k == levels - 1, high, low + k * step)

    return ClassifierMatrix(
        weights=quantized,
        kind=classifier.kind,
        empty_classes=classifier.empty_classes,
    )


def bits_per_weight(levels: int) -> int:
    """Number of bits, ⌈log₂Q⌉, needed to index one of Q levels."""
    if levels < 2:
        raise InvalidLevelsError(
            f"At least 2 quantization levels are needed, got {levels}."
        )
    return math.ceil(math.log2(levels))
