"""Read dataset manifests.

A manifest is a JSON dictionary describing where a dataset lives and how it is
split, for example::

    {
        "name": "waveform",
        "path": "waveform.csv",
        "label": "class",
        "split_file": "waveform_train.txt"
    }

Relative paths are resolved against the directory of the manifest.
"""

import json
from os import PathLike
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt

from hololink._utils import spawn_rng
from hololink.data.dataset import (
    ColumnSchema,
    Dataset,
    apply_split_file,
    load_dataset,
    split_train_test,
)


class DatasetManifest(BaseModel):
    """Description of a dataset file and its split."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    path: Path
    label: str
    features: tuple[str, ...] | None = None
    split_file: Path | None = None
    test_fraction: float = Field(default=0.5, ge=0, lt=1)
    split_seed: NonNegativeInt = 0

    @property
    def schema(self) -> ColumnSchema:
        return ColumnSchema(label=self.label, features=self.features)


def read_manifest(path: str | PathLike) -> DatasetManifest:
    """Read a manifest file and resolve its paths against its directory."""
    path = Path(path)
    with open(path) as f:
        content = json.load(f)

    if not isinstance(content, dict):
        raise TypeError(f"'{path}' must be defined as a dictionary.")

    manifest = DatasetManifest(**content)
    base = path.parent
    return manifest.model_copy(
        update={
            "path": base / manifest.path,
            "split_file": base / manifest.split_file if manifest.split_file else None,
        }
    )


def load_manifest(path: str | PathLike) -> Dataset:
    """Load the dataset described by a manifest file and split it.

    When the manifest names a split file, that split is used. Otherwise the rows
    are split at random with the manifest's test fraction and split seed.

    Returns
    -------
    Dataset
        The raw (not yet normalized) split dataset, named after the manifest.

    """
    manifest = read_manifest(path)
    ds = load_dataset(manifest.path, manifest.schema).replace(name=manifest.name)

    if manifest.split_file is not None:
        return apply_split_file(ds, manifest.split_file)
    return split_train_test(
        ds, spawn_rng(manifest.split_seed, "split"), manifest.test_fraction
    )
