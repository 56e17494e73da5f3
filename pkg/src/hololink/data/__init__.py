"""Load tabular classification datasets and share them among agents."""

from hololink.data.dataset import (
    ColumnSchema,
    Dataset,
    apply_split_file,
    load_dataset,
    make_blobs,
    normalize_features,
    split_train_test,
)
from hololink.data.manifest import DatasetManifest, load_manifest, read_manifest
from hololink.data.shards import AgentShard, split_among_agents

__all__ = [
    "AgentShard",
    "ColumnSchema",
    "Dataset",
    "DatasetManifest",
    "apply_split_file",
    "load_dataset",
    "load_manifest",
    "make_blobs",
    "normalize_features",
    "read_manifest",
    "split_among_agents",
    "split_train_test",
]
