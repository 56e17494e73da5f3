"""Distributed randomized-network classifiers with hyperdimensional compression.

Sub-packages
------------
data
    Tabular datasets, normalization, train/test splits and agent shards.
model
    RVFL encoder and the RLS and centroid readouts.
codecs
    HDC, truncated SVD, DEFLATE and quantization of classifiers.
simulation
    Agents sharing compressed classifiers in rounds.
experiments
    Grid search, compression sweeps, quantization studies and reports.
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("hololink")
except PackageNotFoundError:  # pragma: no cover
    __version__ = "unknown"
