"""Experiments: hyperparameter search, compression sweeps, quantization and reports.

The command line lives in `hololink.experiments.cli`.
"""

from hololink.experiments._exceptions import ReportError, ReportIOError
from hololink.experiments.grid import (
    best_point,
    cross_validate,
    grid_search,
    load_cached_hyperparams,
    store_hyperparams,
    stratified_folds,
)
from hololink.experiments.quantization import quantization_study
from hololink.experiments.report import emit_report
from hololink.experiments.results import (
    ResultRow,
    ResultsSink,
    read_results,
    to_frame,
    write_results,
)
from hololink.experiments.specs import GridSpec, Hyperparams, SweepSpec
from hololink.experiments.sweep import (
    SweepCell,
    expected_row_count,
    run_cell,
    sweep_cells,
    sweep_compression,
)

__all__ = [
    "GridSpec",
    "Hyperparams",
    "ReportError",
    "ReportIOError",
    "ResultRow",
    "ResultsSink",
    "SweepCell",
    "SweepSpec",
    "best_point",
    "cross_validate",
    "emit_report",
    "expected_row_count",
    "grid_search",
    "load_cached_hyperparams",
    "quantization_study",
    "read_results",
    "run_cell",
    "store_hyperparams",
    "stratified_folds",
    "sweep_cells",
    "sweep_compression",
    "to_frame",
    "write_results",
]
