import json
import os
from pathlib import Path
from typing import Any, Literal, Self

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, PositiveInt

from hololink.experiments.specs import GridSpec, SweepSpec

_CONFIG_FILE_NAME = "hololink.json"
_SEED_ENV_VAR = "HOLOLINK_SEED"


def _read_static_config() -> dict[str, Any]:
    """Read the settings file of the working directory, if there is one."""
    path = Path(_CONFIG_FILE_NAME)
    if not path.is_file():
        return {}

    with open(path) as f:
        static_config = json.load(f)

    if not isinstance(static_config, dict):
        raise TypeError(f"'{_CONFIG_FILE_NAME}' must be defined as a dictionary.")

    return static_config


class _Configuration(BaseModel):
    """Settings shared by every experiment, such as the master seed and the grids.

    The values of hololink.json in the working directory replace the defaults
    below, and HOLOLINK_SEED replaces the master seed. There is only one instance.

    Attributes
    ----------
    master_seed : int
        Seed from which every random stream of a run is derived.
        By default 0.
    grid : GridSpec
        Hyperparameter grid used by the `tune` command.
    sweep : SweepSpec
        Sweep settings used by the `sweep` and `quantize` commands.
    folds : int
        Number of cross-validation folds of the grid search.
        By default 5.
    key_mode : Literal["unitary", "gaussian"]
        How HDC key hypervectors are drawn.
        By default "unitary".
    jobs : int
        Width of the worker pool for grid and sweep cells.
        By default 1.
    results_dir : Path
        Directory where results and reports are written.
    hyperparams_cache : Path
        JSON file caching tuned hyperparameters per dataset.

    """

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
    )

    master_seed: NonNegativeInt = Field(default=0)
    grid: GridSpec = Field(default_factory=GridSpec)
    sweep: SweepSpec = Field(default_factory=SweepSpec)
    folds: int = Field(default=5, ge=2)
    key_mode: Literal["unitary", "gaussian"] = Field(default="unitary")
    jobs: PositiveInt = Field(default=1)
    results_dir: Path = Field(default=Path("results"))
    hyperparams_cache: Path = Field(default=Path("hyperparams.json"))

    def __new__(cls) -> Self:
        """Return the one instance of the configuration, creating it if needed."""
        if not hasattr(cls, "_instance"):
            cls._instance = BaseModel.__new__(cls)
        return cls._instance

    def __init__(self, *args, **kwargs) -> None:
        """Validate the merged settings the first time only."""
        if hasattr(self.__class__, "_initialized"):
            return

        kwargs |= _read_static_config()
        # The environment wins over the file
        if (seed := os.environ.get(_SEED_ENV_VAR)) is not None:
            kwargs["master_seed"] = int(seed)

        super().__init__(*args, **kwargs)
        _Configuration._initialized = True


CONFIG = _Configuration()
