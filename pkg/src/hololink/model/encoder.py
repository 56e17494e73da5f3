"""Defines the integer RVFL encoder.

Every feature x_i in [0, 1] is turned into a thermometer code of length H, bound
(component-wise product) to a random bipolar key of that feature. The bound codes
of all features are summed and clipped to [-κ, κ], giving integer hidden
activations. The keys play the role of the input projection matrix and are shared
by every agent.
"""

from typing import Any, Self

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

from hololink._utils import readonly_array
from hololink.model._exceptions import OutOfRangeError

# Integer activations of shape (n, H) with entries in [-κ, κ]
type HiddenBatch = np.ndarray


def make_feature_keys(n_features: int, hidden_size: int, seed: int) -> np.ndarray:
    """Draw the bipolar feature keys.

    Parameters
    ----------
    n_features : int
        Number of features d.
    hidden_size : int
        Size of the hidden layer H.
    seed : int
        Seed of the generator. The same (seed, d, H) always gives the same keys.

    Returns
    -------
    np.ndarray
        Matrix of shape (d, H) with i.i.d. uniform entries in {-1, +1}.

    """
    if n_features < 1 or hidden_size < 1:
        raise ValueError("The number of features and the hidden size must be >= 1.")

    rng = np.random.default_rng(seed)
    return rng.choice(np.array([-1, 1], dtype=np.int8), size=(n_features, hidden_size))


def _levels(x: np.ndarray, hidden_size: int) -> np.ndarray:
    """Number of +1 components of the thermometer code of each value."""
    if not np.all((x >= 0) & (x <= 1)):
        raise OutOfRangeError("Features must be in the range [0, 1].")

    # Round half up
    return np.floor(x * hidden_size + 0.5).astype(np.int64)


def thermometer_encode(x: float, hidden_size: int) -> np.ndarray:
    """Encode a value in [0, 1] as a thermometer code.

    The first round(x·H) components are +1 and the rest -1, with halves rounded
    up.

    Raises
    ------
    OutOfRangeError
        If x is not in [0, 1].

    """
    n_on = int(_levels(np.asarray(x, dtype=float), hidden_size))
    code = np.full(hidden_size, -1, dtype=np.int8)
    code[:n_on] = 1
    return code


class EncoderConfig(BaseModel):
    """The random part of the network, shared by every agent.

    Attributes
    ----------
    hidden_size : int
        Size of the hidden layer H.
    kappa : int
        Clipping threshold κ of the activations.
    seed : int
        Seed the feature keys were drawn with.
    feature_keys : np.ndarray
        Bipolar matrix of shape (d, H).

    """

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    hidden_size: PositiveInt
    kappa: PositiveInt
    seed: NonNegativeInt
    feature_keys: np.ndarray

    @field_validator("feature_keys", mode="before")
    @classmethod
    def _check_keys(cls, value: Any) -> np.ndarray:
        keys = readonly_array(value, np.int8)
        if keys.ndim != 2 or not np.all(np.abs(keys) == 1):
            raise ValueError("Feature keys must be a matrix of -1 and +1 entries.")
        return keys

    @model_validator(mode="after")
    def _check_shape(self) -> Self:
        if self.feature_keys.shape[1] != self.hidden_size:
            raise ValueError("Feature keys must have one column per hidden unit.")
        return self

    @classmethod
    def create(cls, n_features: int, hidden_size: int, kappa: int, seed: int) -> Self:
        """Create an encoder configuration, drawing its keys from the seed."""
        return cls(
            hidden_size=hidden_size,
            kappa=kappa,
            seed=seed,
            feature_keys=make_feature_keys(n_features, hidden_size, seed),
        )

    @property
    def n_features(self) -> int:
        return self.feature_keys.shape[0]


def encode(features: ArrayLike, cfg: EncoderConfig) -> HiddenBatch:
    """Compute the hidden activations of a batch of samples.

    Parameters
    ----------
    features : ArrayLike
        Matrix of shape (n, d) with entries in [0, 1].
    cfg : EncoderConfig
        The shared encoder.

    Returns
    -------
    HiddenBatch
        Integer matrix of shape (n, H) with entries in [-κ, κ].

    Raises
    ------
    OutOfRangeError
        If a feature is not in [0, 1].

    """
    features = np.atleast_2d(np.asarray(features, dtype=float))
    if features.shape[1] != cfg.n_features:
        raise ValueError(
            f"Expected {cfg.n_features} features, got {features.shape[1]}."
        )

    n_on = _levels(features, cfg.hidden_size)
    positions = np.arange(cfg.hidden_size)

    total = np.zeros((features.shape[0], cfg.hidden_size), dtype=np.int64)
    for i, key in enumerate(cfg.feature_keys):
        codes = np.where(positions < n_on[:, i, None], 1, -1)
        total += codes * key

    return np.clip(total, -cfg.kappa, cfg.kappa)


def hidden_activations(x: ArrayLike, cfg: EncoderConfig) -> np.ndarray:
    """Compute the hidden activations of a single sample of length d."""
    return encode(np.asarray(x, dtype=float).reshape(1, -1), cfg)[0]
