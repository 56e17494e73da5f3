"""Compress a classifier into a single hypervector.

The classifier matrix W (L×H) is flattened and cut into R chunks of D = ⌈HL/R⌉
values, the columns of S (D×R). Each column is bound to its own random key
hypervector with circular convolution and the R bound pairs are superposed:

    w = Σ_i K_i ⊛ S_i

A receiver regenerates the keys of the sender and retrieves every column by
binding w with the inverse of its key, Ŝ_i = w ⊛ K_i⁻¹. The other pairs leave
crosstalk noise on each retrieved column, so the reconstruction is approximate
unless R = 1.

Keys are derived deterministically from (master seed, agent id, key index), so no
key material is ever transmitted.
"""

import functools
import struct
from typing import Any, Literal, Self

import numpy as np
from numpy.typing import ArrayLike
from pydantic import (
    BaseModel,
    ConfigDict,
    NonNegativeInt,
    PositiveInt,
    field_validator,
    model_validator,
)

from hololink._utils import check_literal, readonly_array, spawn_rng
from hololink.codecs._exceptions import (
    InvalidRatioError,
    KeyShapeMismatchError,
    LengthMismatchError,
    MetaMismatchError,
    PayloadFormatError,
)
from hololink.model import ClassifierKind, ClassifierMatrix

type Hypervector = np.ndarray
type KeyMode = Literal["unitary", "gaussian"]

_MAGIC = b"HDCW"
_VERSION = 1
# magic, version u16, agent_id u32, H u32, L u32, R u32, D u32
_HEADER = struct.Struct("<4sHIIIII")

_UNITARY_TOL = 1e-9


def compute_dimension(hidden_size: int, num_classes: int, ratio: int) -> int:
    """Calculate the dimension D = ⌈HL/R⌉ of the compressed hypervector."""
    if min(hidden_size, num_classes, ratio) < 1:
        raise ValueError("H, L and R must be positive integers.")
    return -(-hidden_size * num_classes // ratio)


def _weights_of(classifier: ClassifierMatrix | ArrayLike) -> np.ndarray:
    if isinstance(classifier, ClassifierMatrix):
        return classifier.weights
    return np.atleast_2d(np.asarray(classifier, dtype=np.float64))


def reshape_pad(classifier: ClassifierMatrix | ArrayLike, ratio: int) -> np.ndarray:
    """Reshape a classifier matrix into the D×R matrix S.

    The matrix is flattened row-major, zero-padded at the tail to D·R values and
    written column by column: column i holds the i-th chunk of D values.

    Raises
    ------
    InvalidRatioError
        If R is not in 1..HL.

    """
    weights = _weights_of(classifier)
    n_classes, hidden = weights.shape
    if not 1 <= ratio <= weights.size:
        raise InvalidRatioError(
            f"The compression ratio must be in 1..{weights.size}, got {ratio}."
        )

    dimension = compute_dimension(hidden, n_classes, ratio)
    padded = np.zeros(dimension * ratio)
    padded[: weights.size] = weights.ravel()
    return padded.reshape(ratio, dimension).T


def unreshape(reshaped: np.ndarray, num_classes: int, hidden_size: int) -> np.ndarray:
    """Invert `reshape_pad`, dropping the padding."""
    flat = np.asarray(reshaped).T.ravel()
    return flat[: num_classes * hidden_size].reshape(num_classes, hidden_size)


def _check_lengths(x: np.ndarray, y: np.ndarray) -> None:
    if x.ndim != 1 or x.shape != y.shape:
        raise LengthMismatchError(
            f"Hypervectors of shapes {x.shape} and {y.shape} cannot be convolved."
        )


def circular_convolve(x: ArrayLike, y: ArrayLike) -> Hypervector:
    """Bind two hypervectors with circular convolution.

    Computes z_j = Σ_k y_k x_{(j-k) mod D} through the real Fourier transform in
    O(D log D).

    Raises
    ------
    LengthMismatchError
        If the hypervectors do not have the same length.

    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _check_lengths(x, y)

    return np.fft.irfft(np.fft.rfft(x) * np.fft.rfft(y), n=x.size)


def circular_convolve_direct(x: ArrayLike, y: ArrayLike) -> Hypervector:
    """Bind two hypervectors by direct O(D²) summation of the convolution."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _check_lengths(x, y)

    z = np.zeros_like(x)
    for k, y_k in enumerate(y):
        # np.roll(x, k)[j] == x[j - k]
        z += y_k * np.roll(x, k)
    return z


def involution(x: ArrayLike) -> Hypervector:
    """Reverse the indices of a hypervector: output_j = x_{(-j) mod D}.

    For unitary hypervectors this is the exact inverse under circular convolution,
    for random Gaussian ones an approximate inverse.
    """
    x = np.asarray(x)
    return np.roll(x[..., ::-1], 1, axis=-1)


class KeySet(BaseModel):
    """The R key hypervectors of one agent.

    Attributes
    ----------
    keys : np.ndarray
        Matrix of shape (R, D), one key per row.
    master_seed : int
        Seed the keys were derived from.
    agent_id : int
        Agent owning the keys.
    mode : KeyMode
        "unitary" keys have unit-magnitude Fourier coefficients; "gaussian" keys have
        i.i.d. N(0, 1/D) entries.

    """

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    keys: np.ndarray
    master_seed: NonNegativeInt
    agent_id: NonNegativeInt
    mode: KeyMode = "unitary"

    @field_validator("keys", mode="before")
    @classmethod
    def _check_keys(cls, value: Any) -> np.ndarray:
        keys = readonly_array(value, np.float64)
        if keys.ndim != 2 or not np.all(np.isfinite(keys)):
            raise ValueError("Keys must be a finite matrix with one key per row.")
        return keys

    @model_validator(mode="after")
    def _check_unitary(self) -> Self:
        if self.mode == "unitary":
            magnitudes = np.abs(np.fft.rfft(self.keys, axis=1))
            if not np.allclose(magnitudes, 1.0, rtol=0.0, atol=_UNITARY_TOL):
                raise ValueError("Unitary keys must have unit Fourier magnitudes.")
        return self

    @property
    def ratio(self) -> int:
        return self.keys.shape[0]

    @property
    def dimension(self) -> int:
        return self.keys.shape[1]


def _unitary_key(dimension: int, rng: np.random.Generator) -> Hypervector:
    n_bins = dimension // 2 + 1
    spectrum = np.exp(1j * rng.uniform(-np.pi, np.pi, size=n_bins))

    # DC and Nyquist bins of a real vector are real
    spectrum[0] = rng.choice([-1.0, 1.0])
    if dimension % 2 == 0:
        spectrum[-1] = rng.choice([-1.0, 1.0])

    return np.fft.irfft(spectrum, n=dimension)


@functools.lru_cache(maxsize=256)
def derive_keys(
    master_seed: int,
    agent_id: int,
    ratio: int,
    dimension: int,
    mode: KeyMode = "unitary",
) -> KeySet:
    """Derive the key hypervectors of an agent.

    Key i of agent a is drawn from its own stream (master_seed, a, i), so any agent
    can regenerate the keys of any other agent locally.

    Parameters
    ----------
    master_seed : int
        Seed shared by every agent.
    agent_id : int
        Agent owning the keys.
    ratio : int
        Number of keys R.
    dimension : int
        Dimension D of each key.
    mode : KeyMode
        "unitary" draws uniform phases for the free Fourier bins with unit
        magnitudes (random signs for the real DC and Nyquist bins).
        "gaussian" draws i.i.d. N(0, 1/D) entries.
        By default "unitary".

    Returns
    -------
    KeySet
        The R keys.

    """
    check_literal("mode", mode, KeyMode)
    if ratio < 1 or dimension < 1:
        raise ValueError("The number of keys and their dimension must be >= 1.")

    keys = np.empty((ratio, dimension))
    for i in range(ratio):
        rng = spawn_rng(master_seed, "keys", agent_id, i)
        if mode == "unitary":
            keys[i] = _unitary_key(dimension, rng)
        else:
            keys[i] = rng.normal(0.0, 1.0 / np.sqrt(dimension), size=dimension)

    return KeySet(keys=keys, master_seed=master_seed, agent_id=agent_id, mode=mode)


class CompressedClassifier(BaseModel):
    """A classifier compressed into the hypervector w, with its metadata."""

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    w: np.ndarray
    hidden_size: PositiveInt
    num_classes: PositiveInt
    ratio: PositiveInt
    dimension: PositiveInt
    agent_id: NonNegativeInt

    @field_validator("w", mode="before")
    @classmethod
    def _check_w(cls, value: Any) -> np.ndarray:
        w = readonly_array(value, np.float64)
        if w.ndim != 1 or not np.all(np.isfinite(w)):
            raise ValueError("The compressed hypervector must be a finite vector.")
        return w

    @model_validator(mode="after")
    def _check_dimension(self) -> Self:
        expected = compute_dimension(self.hidden_size, self.num_classes, self.ratio)
        if self.dimension != expected or self.w.size != expected:
            raise ValueError(
                f"The hypervector must have D = ⌈HL/R⌉ = {expected} dimensions."
            )
        return self

    def to_bytes(self) -> bytes:
        """Serialize the payload: HDCW header then D little-endian float64 values."""
        header = _HEADER.pack(
            _MAGIC,
            _VERSION,
            self.agent_id,
            self.hidden_size,
            self.num_classes,
            self.ratio,
            self.dimension,
        )
        return header + self.w.astype("<f8").tobytes()

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

        magic, version, agent_id, hidden, n_classes, ratio, dimension = (
            _HEADER.unpack_from(data)
        )
        if magic != _MAGIC or version != _VERSION:
            raise PayloadFormatError("The data is not a compressed classifier.")

        body = data[_HEADER.size :]
        if len(body) != 8 * dimension:
            raise PayloadFormatError("The data length does not match its header.")

        return cls(
            w=np.frombuffer(body, dtype="<f8"),
            hidden_size=hidden,
            num_classes=n_classes,
            ratio=ratio,
            dimension=dimension,
            agent_id=agent_id,
        )


def compress(classifier: ClassifierMatrix, keys: KeySet) -> CompressedClassifier:
    """Compress a classifier into one hypervector, w = Σ_i K_i ⊛ S_i.

    Raises
    ------
    KeyShapeMismatchError
        If the keys do not have D = ⌈HL/R⌉ dimensions.

    """
    n_classes, hidden = classifier.weights.shape
    dimension = compute_dimension(hidden, n_classes, keys.ratio)
    if keys.dimension != dimension:
        raise KeyShapeMismatchError(
            f"{keys.ratio} keys of dimension {keys.dimension} cannot compress a "
            f"{n_classes}x{hidden} classifier, which needs dimension {dimension}."
        )

    values = reshape_pad(classifier, keys.ratio).T
    bound = np.fft.rfft(keys.keys, axis=1) * np.fft.rfft(values, axis=1)
    w = np.fft.irfft(bound.sum(axis=0), n=dimension)

    return CompressedClassifier(
        w=w,
        hidden_size=hidden,
        num_classes=n_classes,
        ratio=keys.ratio,
        dimension=dimension,
        agent_id=keys.agent_id,
    )


def decompress(
    compressed: CompressedClassifier,
    keys: KeySet,
    kind: ClassifierKind = "rls",
) -> ClassifierMatrix:
    """Reconstruct a classifier from its hypervector, Ŝ_i = w ⊛ involution(K_i).

    The result has the shape of the original classifier but is generally not equal
    to it: the other key-value pairs leave crosstalk noise on every column.

    Raises
    ------
    MetaMismatchError
        If the keys do not belong to the payload's agent, or their number or
        dimension disagree with the payload.

    """
    expected = (compressed.agent_id, compressed.ratio, compressed.dimension)
    found = (keys.agent_id, keys.ratio, keys.dimension)
    if expected != found:
        raise MetaMismatchError(
            f"Payload (agent, R, D) = {expected} does not match the keys {found}."
        )

    inverses = involution(keys.keys)
    retrieved = np.fft.irfft(
        np.fft.rfft(compressed.w) * np.fft.rfft(inverses, axis=1),
        n=compressed.dimension,
        axis=1,
    )
    weights = unreshape(retrieved.T, compressed.num_classes, compressed.hidden_size)
    return ClassifierMatrix(weights=weights, kind=kind)
