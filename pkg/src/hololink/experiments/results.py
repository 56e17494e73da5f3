"""Rows of the results table and their CSV storage."""

import csv
import math
import threading
from collections.abc import Iterable
from os import PathLike
from pathlib import Path
from typing import Self

import pandas as pd
from pydantic import BaseModel, ConfigDict

from hololink.simulation import RoundResult

_NUMERIC_COLUMNS = (
    "ratio_param",
    "mean_accuracy",
    "per_agent_min",
    "per_agent_max",
    "payload_values_per_agent",
    "payload_bytes_per_agent",
)


class ResultRow(BaseModel):
    """One row of the results table.

    Attributes
    ----------
    dataset : str
        Name of the dataset.
    n_agents : int
        Number of agents N. 1 for centralized runs.
    classifier_kind : str
        "rls" or "centroid".
    codec : str
        "none", "deflate", "hdc", "svd", "small" for small models or "quant{Q}" for
        quantized classifiers.
    ratio_param : float
        Compression ratio of the lossy codecs and small models, the achieved ratio
        of DEFLATE, Q for quantization and 1 for uncompressed runs.
    seed : int
        Master seed of the run.
    repetition : int
        Index of the repetition, or -1 for a mean over repetitions.
    mean_accuracy, per_agent_min, per_agent_max : float
        Test accuracies of the agents. NaN when the cell failed.
    payload_values_per_agent, payload_bytes_per_agent : float
        Mean payload sizes of the agents.
    error : str
        Why the cell failed, empty if it did not.

    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    dataset: str
    n_agents: int
    classifier_kind: str
    codec: str
    ratio_param: float
    seed: int
    repetition: int
    mean_accuracy: float
    per_agent_min: float
    per_agent_max: float
    payload_values_per_agent: float
    payload_bytes_per_agent: float
    error: str = ""

    @classmethod
    def from_round(
        cls,
        result: RoundResult,
        *,
        dataset: str,
        n_agents: int,
        classifier_kind: str,
        codec: str,
        ratio_param: float,
        seed: int,
        repetition: int,
    ) -> Self:
        """Render the outcome of a round as a row."""
        return cls(
            dataset=dataset,
            n_agents=n_agents,
            classifier_kind=classifier_kind,
            codec=codec,
            ratio_param=ratio_param,
            seed=seed,
            repetition=repetition,
            mean_accuracy=result.mean_accuracy,
            per_agent_min=result.min_accuracy,
            per_agent_max=result.max_accuracy,
            payload_values_per_agent=result.mean_payload_values,
            payload_bytes_per_agent=result.mean_payload_bytes,
        )

    @classmethod
    def failed(
        cls,
        error: Exception,
        *,
        dataset: str,
        n_agents: int,
        classifier_kind: str,
        codec: str,
        ratio_param: float,
        seed: int,
        repetition: int,
    ) -> Self:
        """Record a cell that raised instead of producing a result."""
        return cls(
            dataset=dataset,
            n_agents=n_agents,
            classifier_kind=classifier_kind,
            codec=codec,
            ratio_param=ratio_param,
            seed=seed,
            repetition=repetition,
            mean_accuracy=math.nan,
            per_agent_min=math.nan,
            per_agent_max=math.nan,
            payload_values_per_agent=math.nan,
            payload_bytes_per_agent=math.nan,
            error=f"{type(error).__name__}: {error}",
        )

    @property
    def ok(self) -> bool:
        return not self.error


COLUMNS = tuple(ResultRow.model_fields)


class ResultsSink:
    """Append-only CSV file of results rows.

    Rows are written whole and flushed one at a time, so a file interrupted
    mid-sweep only holds complete rows. The header is written with the first row
    of a new or empty file.
    """

    def __init__(self, path: str | PathLike):
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, row: ResultRow) -> None:
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            new = not self.path.exists() or self.path.stat().st_size == 0
            with open(self.path, "a", newline="") as f:
                writer = csv.DictWriter(f, fieldnames=COLUMNS)
                if new:
                    writer.writeheader()
                writer.writerow(row.model_dump())
                f.flush()

    def extend(self, rows: Iterable[ResultRow]) -> None:
        for row in rows:
            self.append(row)


def write_results(rows: Iterable[ResultRow], path: str | PathLike) -> Path:
    """Write a complete results table, replacing the file."""
    path = Path(path)
    path.unlink(missing_ok=True)
    ResultsSink(path).extend(rows)
    return path


def read_results(path: str | PathLike) -> list[ResultRow]:
    """Read a results table written by `ResultsSink` or `write_results`.

    Floats are parsed with round-trip precision, so the rows equal the written
    ones exactly.
    """
    frame = pd.read_csv(
        path,
        keep_default_na=False,
        na_values={column: ["nan", "NaN", ""] for column in _NUMERIC_COLUMNS},
        dtype={"dataset": str, "classifier_kind": str, "codec": str, "error": str},
        float_precision="round_trip",
    )
    missing = set(COLUMNS) - set(frame.columns)
    if missing:
        raise ValueError(f"The results file lacks the columns {sorted(missing)}.")

    return [ResultRow.model_validate(record) for record in frame.to_dict("records")]


def to_frame(rows: Iterable[ResultRow]) -> pd.DataFrame:
    """Collect rows into a data frame with the table's columns."""
    return pd.DataFrame([row.model_dump() for row in rows], columns=list(COLUMNS))
