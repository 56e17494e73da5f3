from typing import Any, Literal, TypeAliasType, get_args

import numpy as np
from numpy.typing import ArrayLike

type Purpose = Literal["split", "shard", "encoder", "keys", "folds", "blobs"]

_PURPOSE_CODES = {name: code for code, name in enumerate(get_args(Purpose.__value__))}


def check_literal(name: str, value: Any, literal_type_alias: TypeAliasType) -> None:
    literal_args = get_args(literal_type_alias.__value__)
    if value not in literal_args:
        possibles_clause = ", ".join(literal_args[:-1]) + " or " + literal_args[-1]
        raise ValueError(f"The parameter {name} must be one of {possibles_clause}.")


def derive_seed(seed: int, purpose: Purpose, *ids: int) -> int:
    """Derive an independent integer seed for one purpose of a run.

    The master seed is expanded with a spawn key made of the purpose code and the
    given integer identifiers (eg. agent id, repetition). Distinct tuples give
    statistically independent streams, so the order in which streams are consumed
    never changes results.

    Parameters
    ----------
    seed : int
        The non-negative master seed.
    purpose : Purpose
        What the stream is used for.
    *ids : int
        Non-negative identifiers further separating the streams.

    Returns
    -------
    int
        A 64-bit seed.

    """
    check_literal("purpose", purpose, Purpose)
    sequence = np.random.SeedSequence(seed, spawn_key=(_PURPOSE_CODES[purpose], *ids))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def spawn_rng(seed: int, purpose: Purpose, *ids: int) -> np.random.Generator:
    """Create the generator of the stream defined by `derive_seed`."""
    return np.random.default_rng(derive_seed(seed, purpose, *ids))


def relative_error(approx: ArrayLike, exact: ArrayLike) -> float:
    """Calculate the relative Frobenius error of an approximation.

    When the exact value is zero, the absolute error is returned instead.
    """
    approx = np.asarray(approx, dtype=float)
    exact = np.asarray(exact, dtype=float)
    error = float(np.linalg.norm(approx - exact))
    scale = float(np.linalg.norm(exact))
    return error / scale if scale > 0 else error


def readonly_array(values: ArrayLike, dtype: type | np.dtype) -> np.ndarray:
    """Copy values into a new array of the given dtype that cannot be written to."""
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array
