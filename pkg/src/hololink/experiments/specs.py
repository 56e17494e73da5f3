"""Settings of the experiments: hyperparameters, grids and sweeps."""

from collections.abc import Iterator
from itertools import product

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PositiveFloat,
    PositiveInt,
    field_validator,
)

from hololink.codecs import CodecName
from hololink.model import ClassifierKind


class Hyperparams(BaseModel):
    """The tuned hyperparameters of a dataset: H, λ and κ."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    hidden_size: PositiveInt
    lam: PositiveFloat
    kappa: PositiveInt


class GridSpec(BaseModel):
    """The hyperparameter grid of the grid search.

    Attributes
    ----------
    hidden_sizes : tuple[int, ...]
        Hidden sizes H. By default 50 to 1500 with step 50.
    lambdas : tuple[float, ...]
        Regularization coefficients λ. By default 2^k for k = -10..5.
    kappas : tuple[int, ...]
        Clipping thresholds κ. By default 1, 3, 7 and 15.

    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    hidden_sizes: tuple[PositiveInt, ...] = Field(
        default=tuple(range(50, 1501, 50)), min_length=1
    )
    lambdas: tuple[PositiveFloat, ...] = Field(
        default=tuple(2.0**k for k in range(-10, 6)), min_length=1
    )
    kappas: tuple[PositiveInt, ...] = Field(default=(1, 3, 7, 15), min_length=1)

    @property
    def size(self) -> int:
        return len(self.hidden_sizes) * len(self.lambdas) * len(self.kappas)

    def points(self) -> Iterator[Hyperparams]:
        """Iterate over every point of the grid."""
        for hidden_size, lam, kappa in product(
            self.hidden_sizes, self.lambdas, self.kappas
        ):
            yield Hyperparams(hidden_size=hidden_size, lam=lam, kappa=kappa)


class SweepSpec(BaseModel):
    """What a compression sweep and a quantization study run.

    Attributes
    ----------
    agent_counts : tuple[int, ...]
        Numbers of agents N. By default 10 and 100.
    ratios : tuple[int, ...]
        Compression ratios of the lossy codecs and of the small models.
        By default 2, 3, 4, 6, 8, 12, 16, 24 and 32.
    codecs : tuple[CodecName, ...]
        Codecs to sweep over. The uncompressed and lossless references are always
        run.
    classifiers : tuple[ClassifierKind, ...]
        Classifier kinds. By default both.
    repetitions : int
        Repetitions of every cell, each with new random draws. By default 10.
    quantization_levels : tuple[int, ...]
        Levels of the quantization study. By default 3, 5, 9, ..., 129 and 255.

    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    agent_counts: tuple[PositiveInt, ...] = (10, 100)
    ratios: tuple[PositiveInt, ...] = (2, 3, 4, 6, 8, 12, 16, 24, 32)
    codecs: tuple[CodecName, ...] = ("hdc", "svd", "deflate", "none")
    classifiers: tuple[ClassifierKind, ...] = ("rls", "centroid")
    repetitions: PositiveInt = 10
    quantization_levels: tuple[int, ...] = (3, 5, 9, 17, 33, 65, 129, 255)

    @field_validator("quantization_levels")
    @classmethod
    def _check_levels(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if any(levels < 2 for levels in value):
            raise ValueError("Quantization needs at least 2 levels.")
        return value
