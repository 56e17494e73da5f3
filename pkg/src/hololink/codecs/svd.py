"""Lossy compression of a classifier with a truncated SVD.

The classifier is reshaped row-major into a zero-padded M×M square, M = ⌈√(HL)⌉,
and only its t largest singular triples are kept. Every kept triple costs 2M + 1
values (left vector, right vector and singular value), so t is the largest count
fitting the budget HL/ratio, and at least 1.
"""

import math
import struct
from typing import Any, Self

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    PositiveInt,
    field_validator,
    model_validator,
)
from scipy.linalg import LinAlgError, svd

from hololink._utils import readonly_array
from hololink.codecs._exceptions import (
    InvalidRatioError,
    PayloadFormatError,
    ShapeMismatchError,
    SvdFailureError,
)
from hololink.model import ClassifierKind, ClassifierMatrix

_MAGIC = b"SVDT"
_VERSION = 1
# magic, version u16, H u32, L u32, M u32, t u32
_HEADER = struct.Struct("<4sHIIII")


def square_side(hidden_size: int, num_classes: int) -> int:
    """Side M = ⌈√(HL)⌉ of the square a classifier is reshaped into."""
    side = math.isqrt(hidden_size * num_classes)
    return side if side * side == hidden_size * num_classes else side + 1


def svd_rank_for_ratio(hidden_size: int, num_classes: int, ratio: float) -> int:
    """Number t of singular triples fitting the budget of a compression ratio.

    Raises
    ------
    InvalidRatioError
        If the ratio is not larger than 1.

    """
    if not ratio > 1:
        raise InvalidRatioError(f"The SVD compression ratio must be > 1, got {ratio}.")

    side = square_side(hidden_size, num_classes)
    budget = hidden_size * num_classes / ratio
    return min(side, max(1, math.floor(budget / (2 * side + 1))))


class SvdPayload(BaseModel):
    """The truncated singular triples of a squared classifier.

    Attributes
    ----------
    u : np.ndarray
        Left singular vectors, shape (M, t).
    sigma : np.ndarray
        Singular values in descending order, length t.
    v : np.ndarray
        Right singular vectors, shape (M, t).
    hidden_size, num_classes : int
        Shape (L, H) of the original classifier.
    side : int
        M = ⌈√(HL)⌉.
    rank : int
        Number of kept triples t <= M.

    """

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray
    hidden_size: PositiveInt
    num_classes: PositiveInt
    side: PositiveInt
    rank: PositiveInt

    @field_validator("u", "sigma", "v", mode="before")
    @classmethod
    def _check_finite(cls, value: Any) -> np.ndarray:
        array = readonly_array(value, np.float64)
        if not np.all(np.isfinite(array)):
            raise ValueError("SVD factors must be finite.")
        return array

    @model_validator(mode="after")
    def _check_meta(self) -> Self:
        if self.side != square_side(self.hidden_size, self.num_classes):
            raise ValueError("The square side must be M = ⌈√(HL)⌉.")
        if self.rank > self.side:
            raise ValueError("Cannot keep more singular triples than M.")
        if np.any(self.sigma < 0) or np.any(np.diff(self.sigma) > 0):
            raise ValueError("Singular values must be non-negative and descending.")
        return self

    @property
    def n_values(self) -> int:
        """Number of transmitted values, t·(2M + 1)."""
        return self.rank * (2 * self.side + 1)

    def to_bytes(self) -> bytes:
        """Serialize the payload.

        The SVDT header (version u16, H, L, M, t as u32) is followed by σ, U and V
        (both column-major) as little-endian float64 values.
        """
        header = _HEADER.pack(
            _MAGIC, _VERSION, self.hidden_size, self.num_classes, self.side, self.rank
        )
        body = b"".join(
            a.astype("<f8").tobytes(order="F") for a in (self.sigma, self.u, self.v)
        )
        return header + body

    @classmethod
    def from_bytes(cls, data: bytes) -> Self:
        """Deserialize a payload written by `to_bytes`.

        Raises
        ------
        PayloadFormatError
            If the header or the length of the data is invalid.

        """
        if len(data) < _HEADER.size:
            raise PayloadFormatError("The data is too short to hold a header.")

        magic, version, hidden, n_classes, side, rank = _HEADER.unpack_from(data)
        if magic != _MAGIC or version != _VERSION:
            raise PayloadFormatError("The data is not a truncated SVD payload.")

        values = np.frombuffer(data[_HEADER.size :], dtype="<f8")
        if values.size != rank * (2 * side + 1):
            raise PayloadFormatError("The data length does not match its header.")

        sigma, u, v = np.split(values, [rank, rank + side * rank])
        return cls(
            u=u.reshape(side, rank, order="F"),
            sigma=sigma,
            v=v.reshape(side, rank, order="F"),
            hidden_size=hidden,
            num_classes=n_classes,
            side=side,
            rank=rank,
        )


def _to_square(weights: np.ndarray, side: int) -> np.ndarray:
    padded = np.zeros(side * side)
    padded[: weights.size] = weights.ravel()
    return padded.reshape(side, side)


def svd_compress_rank(classifier: ClassifierMatrix, rank: int) -> SvdPayload:
    """Keep the `rank` largest singular triples of the squared classifier.

    Raises
    ------
    SvdFailureError
        If the decomposition does not converge.

    """
    n_classes, hidden = classifier.weights.shape
    side = square_side(hidden, n_classes)
    if not 1 <= rank <= side:
        raise ValueError(f"The rank must be in 1..{side}, got {rank}.")

    try:
        u, sigma, vt = svd(_to_square(classifier.weights, side), full_matrices=False)
    except LinAlgError as e:
        raise SvdFailureError("The singular value decomposition failed.") from e

    return SvdPayload(
        u=u[:, :rank],
        sigma=sigma[:rank],
        v=vt[:rank].T,
        hidden_size=hidden,
        num_classes=n_classes,
        side=side,
        rank=rank,
    )


def svd_compress(classifier: ClassifierMatrix, ratio: float) -> SvdPayload:
    """Compress a classifier with a truncated SVD sized for a compression ratio.

    Parameters
    ----------
    classifier : ClassifierMatrix
        The classifier to compress.
    ratio : float
        Desired compression ratio, > 1. The rank is
        t = max(1, ⌊HL / (ratio·(2M + 1))⌋).

    Returns
    -------
    SvdPayload
        The truncated singular triples.

    Raises
    ------
    InvalidRatioError
        If the ratio is not larger than 1.
    SvdFailureError
        If the decomposition does not converge.

    """
    n_classes, hidden = classifier.weights.shape
    return svd_compress_rank(classifier, svd_rank_for_ratio(hidden, n_classes, ratio))


def svd_decompress(
    payload: SvdPayload, kind: ClassifierKind = "rls"
) -> ClassifierMatrix:
    """Reconstruct a classifier, Ŵ = U_t diag(σ_t) V_tᵀ, dropping the padding.

    Raises
    ------
    ShapeMismatchError
        If the factors do not have shape (M, t).

    """
    expected = (payload.side, payload.rank)
    if payload.u.shape != expected or payload.v.shape != expected:
        raise ShapeMismatchError(
            f"SVD factors must have shape {expected}, got {payload.u.shape} "
            f"and {payload.v.shape}."
        )
    if payload.sigma.shape != (payload.rank,):
        raise ShapeMismatchError(f"Expected {payload.rank} singular values.")

    square = (payload.u * payload.sigma) @ payload.v.T
    n_weights = payload.num_classes * payload.hidden_size
    weights = square.ravel()[:n_weights].reshape(
        payload.num_classes, payload.hidden_size
    )
    return ClassifierMatrix(weights=weights, kind=kind)
