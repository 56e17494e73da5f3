"""Defines the Dataset and the operations preparing it for the experiments.

A Dataset holds a feature matrix, integer class labels and a train/test split.
Loading, splitting and normalization each return a new Dataset.
"""

import logging
from os import PathLike
from pathlib import Path
from typing import Any, Self

import numpy as np
import pandas as pd
from pydantic import (
    BaseModel,
    ConfigDict,
    PositiveInt,
    field_validator,
    model_validator,
)

from hololink._utils import readonly_array
from hololink.data._exceptions import (
    EmptyDatasetError,
    MissingClassError,
    MissingLabelColumnError,
    NoFeatureColumnsError,
    NonNumericFeatureError,
)

logger = logging.getLogger(__name__)


class ColumnSchema(BaseModel):
    """Column specification of a tabular dataset file.

    Attributes
    ----------
    label : str
        Name of the label column.
    features : tuple[str, ...] | None
        Names of the feature columns. If None, every column but the label is a
        feature.

    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    label: str
    features: tuple[str, ...] | None = None


class Dataset(BaseModel):
    """A classification dataset with a train/test split.

    Index sets are stored sorted. Arrays are read-only.

    Attributes
    ----------
    name : str
        Name of the dataset.
    features : np.ndarray
        Feature matrix of shape (n, d).
    labels : np.ndarray
        Integer labels of length n, with values in 0..num_classes-1.
    num_classes : int
        Number of classes L.
    train_indices : np.ndarray
        Rows of the train split.
    test_indices : np.ndarray
        Rows of the test split. Disjoint from the train split, and together they
        cover every row.
    class_names : tuple[str, ...]
        Original name of each class, if known.

    """

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    name: str
    features: np.ndarray
    labels: np.ndarray
    num_classes: PositiveInt
    train_indices: np.ndarray
    test_indices: np.ndarray
    class_names: tuple[str, ...] = ()

    @field_validator("features", mode="before")
    @classmethod
    def _check_features(cls, value: Any) -> np.ndarray:
        features = readonly_array(value, np.float64)
        if features.ndim != 2:
            raise ValueError("The features must be a matrix.")
        return features

    @field_validator("labels", mode="before")
    @classmethod
    def _check_labels(cls, value: Any) -> np.ndarray:
        return readonly_array(value, np.int64).reshape(-1)

    @field_validator("train_indices", "test_indices", mode="before")
    @classmethod
    def _check_indices(cls, value: Any) -> np.ndarray:
        indices = np.asarray(value, dtype=np.int64).reshape(-1)
        if np.unique(indices).size != indices.size:
            raise ValueError("An index set cannot contain repeated indices.")
        return readonly_array(np.sort(indices), np.int64)

    @model_validator(mode="after")
    def _check_consistency(self) -> Self:
        n = self.features.shape[0]

        if self.labels.size != n:
            raise ValueError("There must be exactly one label per row.")
        if n and (self.labels.min() < 0 or self.labels.max() >= self.num_classes):
            raise ValueError(f"Labels must be in the range 0..{self.num_classes - 1}.")

        if np.intersect1d(self.train_indices, self.test_indices).size:
            raise ValueError("The train and test splits must be disjoint.")
        split = np.concatenate([self.train_indices, self.test_indices])
        if split.size != n or (n and (split.min() < 0 or split.max() >= n)):
            raise ValueError("The train and test splits must cover every row.")

        return self

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def train_features(self) -> np.ndarray:
        return self.features[self.train_indices]

    @property
    def train_labels(self) -> np.ndarray:
        return self.labels[self.train_indices]

    @property
    def test_features(self) -> np.ndarray:
        return self.features[self.test_indices]

    @property
    def test_labels(self) -> np.ndarray:
        return self.labels[self.test_indices]

    def replace(self, **changes: Any) -> Self:
        """Return a validated copy of the dataset with the given fields replaced."""
        return self.__class__(**(dict(self) | changes))

    def check_class_coverage(self) -> None:
        """Check that every class appears at least once in the train split.

        Raises
        ------
        MissingClassError
            If a class has no train sample.

        """
        counts = np.bincount(self.train_labels, minlength=self.num_classes)
        missing = np.flatnonzero(counts == 0)
        if missing.size:
            raise MissingClassError(
                f"Classes {missing.tolist()} have no sample in the train split."
            )


def load_dataset(path: str | PathLike, schema: ColumnSchema) -> Dataset:
    """Load a raw dataset from a header-bearing CSV file.

    Labels may be text. They are re-indexed to contiguous integers in order of
    first appearance. Every row is put in the train split; see `split_train_test`
    and `apply_split_file` for splitting.

    Parameters
    ----------
    path : str | PathLike
        Path of the CSV file.
    schema : ColumnSchema
        Names the label column and, optionally, the feature columns.

    Returns
    -------
    Dataset
        The raw (not yet normalized) dataset, named after the file stem.

    Raises
    ------
    FileNotFoundError
        If the file does not exist.
    MissingLabelColumnError
        If the label column, or a named feature column, is not in the header.
    NoFeatureColumnsError
        If no feature column is named or left besides the label.
    NonNumericFeatureError
        If a feature cell is not a number.
    EmptyDatasetError
        If the file has no data rows.

    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Dataset file '{path}' does not exist.")

    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError as e:
        raise EmptyDatasetError(f"Dataset file '{path}' is empty.") from e

    if schema.label not in frame.columns:
        raise MissingLabelColumnError(
            f"Label column '{schema.label}' is not in the header of '{path}'."
        )
    if schema.features is None:
        feature_columns = tuple(c for c in frame.columns if c != schema.label)
    else:
        feature_columns = schema.features
    if not feature_columns:
        raise NoFeatureColumnsError(f"Dataset file '{path}' has no feature column.")
    if absent := [c for c in feature_columns if c not in frame.columns]:
        raise MissingLabelColumnError(f"Feature columns {absent} are not in '{path}'.")

    if frame.empty:
        raise EmptyDatasetError(f"Dataset file '{path}' has no data rows.")

    # Parse column by column to report the first offending cell
    columns = []
    for col in feature_columns:
        parsed = pd.to_numeric(frame[col].str.strip(), errors="coerce")
        if (bad := np.flatnonzero(parsed.isna().to_numpy())).size:
            raise NonNumericFeatureError(int(bad[0]), col)
        columns.append(parsed.to_numpy(dtype=np.float64))

    codes, uniques = pd.factorize(frame[schema.label], sort=False)

    logger.info(
        "Loaded '%s': %d rows, %d features, %d classes",
        path,
        len(frame),
        len(columns),
        len(uniques),
    )

    return Dataset(
        name=path.stem,
        features=np.column_stack(columns),
        labels=codes,
        num_classes=len(uniques),
        train_indices=np.arange(len(frame)),
        test_indices=np.array([], dtype=np.int64),
        class_names=tuple(str(u) for u in uniques),
    )


def normalize_features(raw: Dataset) -> Dataset:
    """Rescale every feature to [0, 1] using train-split statistics.

    Each column is mapped linearly so that its train minimum goes to 0 and its train
    maximum goes to 1. Values outside that range (test rows only) are clamped.
    Columns that are constant on the train split map to 0.

    Applying the operation twice gives the same result as applying it once.

    Parameters
    ----------
    raw : Dataset
        The dataset to normalize.

    Returns
    -------
    Dataset
        The normalized dataset.

    Raises
    ------
    EmptyDatasetError
        If the train split is empty.

    """
    if raw.train_indices.size == 0:
        raise EmptyDatasetError("Cannot normalize features with an empty train split.")

    train = raw.train_features
    low = train.min(axis=0)
    span = train.max(axis=0) - low

    scaled = np.divide(
        raw.features - low,
        span,
        out=np.zeros_like(raw.features),
        where=span > 0,
    )

    return raw.replace(features=np.clip(scaled, 0.0, 1.0))


def split_train_test(
    ds: Dataset, rng: np.random.Generator, test_fraction: float = 0.5
) -> Dataset:
    """Split the rows of a dataset into train and test sets, stratified by class.

    From each class, ⌊count·test_fraction⌋ randomly chosen rows go to the test
    split, so every class present in the data keeps at least one train row.

    Parameters
    ----------
    ds : Dataset
        The dataset to split. Its current split is ignored.
    rng : np.random.Generator
        Seeded generator.
    test_fraction : float
        Fraction of the rows of each class that go to the test split.
        Must be in [0, 1). By default 0.5.

    Returns
    -------
    Dataset
        The dataset with the new split.

    Raises
    ------
    MissingClassError
        If a class has no row at all.

    """
    if not 0 <= test_fraction < 1:
        raise ValueError("The test fraction must be in [0, 1).")

    test = []
    for c in range(ds.num_classes):
        members = rng.permutation(np.flatnonzero(ds.labels == c))
        test.append(members[: int(np.floor(members.size * test_fraction))])
    test_indices = np.concatenate(test)
    train_indices = np.setdiff1d(np.arange(ds.n_samples), test_indices)

    split = ds.replace(train_indices=train_indices, test_indices=test_indices)
    split.check_class_coverage()
    return split


def apply_split_file(ds: Dataset, path: str | PathLike) -> Dataset:
    """Split a dataset with a fixed split file.

    The file lists one train row index per line. Every other row forms the test
    split.

    Raises
    ------
    FileNotFoundError
        If the file does not exist.
    MissingClassError
        If a class has no row in the given train split.

    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Split file '{path}' does not exist.")

    train_indices = np.loadtxt(path, dtype=np.int64, ndmin=1)
    if train_indices.size and (
        train_indices.min() < 0 or train_indices.max() >= ds.n_samples
    ):
        raise ValueError(f"Split file '{path}' refers to rows outside the dataset.")
    test_indices = np.setdiff1d(np.arange(ds.n_samples), train_indices)

    split = ds.replace(train_indices=train_indices, test_indices=test_indices)
    split.check_class_coverage()
    return split


def make_blobs(
    n: int,
    d: int,
    num_classes: int,
    rng: np.random.Generator,
    spread: float = 1.0,
    separation: float = 2.0,
) -> Dataset:
    """Generate a synthetic dataset of isotropic Gaussian blobs.

    Class centers are drawn from N(0, separation²·I) and samples of each class
    from N(center, spread²·I). Classes are as balanced as n allows.
    Every row is put in the train split.
    """
    centers = rng.normal(0.0, separation, size=(num_classes, d))
    labels = rng.permutation(np.arange(n) % num_classes)
    features = centers[labels] + rng.normal(0.0, spread, size=(n, d))

    return Dataset(
        name="blobs",
        features=features,
        labels=labels,
        num_classes=num_classes,
        train_indices=np.arange(n),
        test_indices=np.array([], dtype=np.int64),
        class_names=tuple(f"blob{c}" for c in range(num_classes)),
    )
