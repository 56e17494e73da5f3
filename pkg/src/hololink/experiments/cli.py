"""Command-line entry point of the experiments.

Examples
--------
Tune, sweep and report on a synthetic dataset::

    hololink tune synthetic
    hololink sweep synthetic --agents 10 --ratios 2,4,8 --reps 3
    hololink quantize synthetic --levels 3,5,255
    hololink report results/synthetic_sweep.csv

"""

import argparse
import logging
from collections.abc import Callable, Sequence
from pathlib import Path

from hololink._config import CONFIG
from hololink._utils import check_literal, spawn_rng
from hololink.codecs import CodecName
from hololink.data import (
    Dataset,
    load_manifest,
    make_blobs,
    normalize_features,
    split_train_test,
)
from hololink.experiments.grid import (
    grid_search,
    load_cached_hyperparams,
    store_hyperparams,
)
from hololink.experiments.quantization import quantization_study
from hololink.experiments.report import emit_report
from hololink.experiments.results import ResultsSink, read_results
from hololink.experiments.specs import Hyperparams, SweepSpec
from hololink.experiments.sweep import sweep_compression

logger = logging.getLogger(__name__)

SYNTHETIC = "synthetic"
_LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def _list_of[T](convert: Callable[[str], T]) -> Callable[[str], tuple[T, ...]]:
    def parse(text: str) -> tuple[T, ...]:
        try:
            items = (item.strip() for item in text.split(","))
            return tuple(convert(item) for item in items if item)
        except ValueError as e:
            raise argparse.ArgumentTypeError(str(e)) from e

    return parse


def _codec_name(text: str) -> CodecName:
    check_literal("codec", text, CodecName)
    return text  # type: ignore[return-value]


def load_experiment_dataset(dataset: str, seed: int) -> Dataset:
    """Load and normalize a dataset given by manifest path or as "synthetic".

    The synthetic dataset has 2000 samples of 8 features in 3 Gaussian blobs,
    split in halves.
    """
    if dataset == SYNTHETIC:
        raw = make_blobs(2000, 8, 3, spawn_rng(seed, "blobs"))
        raw = split_train_test(raw, spawn_rng(seed, "split")).replace(name=SYNTHETIC)
    else:
        raw = load_manifest(dataset)
    return normalize_features(raw)


def _hyperparams(ds: Dataset, seed: int, retune: bool = False) -> Hyperparams:
    if not retune:
        cached = load_cached_hyperparams(CONFIG.hyperparams_cache, ds.name)
        if cached is not None:
            return cached

    params = grid_search(ds, CONFIG.grid, seed, CONFIG.folds, CONFIG.jobs)
    store_hyperparams(CONFIG.hyperparams_cache, ds.name, params)
    return params


def _tune(args: argparse.Namespace) -> None:
    ds = load_experiment_dataset(args.dataset, args.seed)
    params = _hyperparams(ds, args.seed, retune=True)
    print(params.model_dump_json())


def _sweep(args: argparse.Namespace) -> None:
    ds = load_experiment_dataset(args.dataset, args.seed)
    params = _hyperparams(ds, args.seed)

    changes = {
        key: value
        for key, value in (
            ("agent_counts", args.agents),
            ("ratios", args.ratios),
            ("codecs", args.codecs),
            ("repetitions", args.reps),
        )
        if value is not None
    }
    sweep = SweepSpec.model_validate(CONFIG.sweep.model_dump() | changes)

    out = Path(args.out or CONFIG.results_dir) / f"{ds.name}_sweep.csv"
    out.unlink(missing_ok=True)
    sweep_compression(
        ds,
        params,
        sweep,
        args.seed,
        key_mode=CONFIG.key_mode,
        jobs=CONFIG.jobs,
        sink=ResultsSink(out),
    )
    print(out)


def _quantize(args: argparse.Namespace) -> None:
    ds = load_experiment_dataset(args.dataset, args.seed)
    params = _hyperparams(ds, args.seed)
    levels = args.levels or CONFIG.sweep.quantization_levels
    reps = args.reps or CONFIG.sweep.repetitions

    out = Path(args.out or CONFIG.results_dir) / f"{ds.name}_quantization.csv"
    out.unlink(missing_ok=True)
    quantization_study(ds, params, levels, reps, args.seed, sink=ResultsSink(out))
    print(out)


def _report(args: argparse.Namespace) -> None:
    rows = []
    for path in args.results:
        rows += read_results(path)
    for path in emit_report(rows, args.out or CONFIG.results_dir):
        print(path)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hololink",
        description="Compress shared RVFL classifiers and measure the cost.",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log more (-v for progress, -vv for debugging).",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def add_dataset_command(name: str, help_: str) -> argparse.ArgumentParser:
        command = commands.add_parser(name, help=help_)
        command.add_argument(
            "dataset", help=f"Dataset manifest (JSON) or '{SYNTHETIC}'."
        )
        command.add_argument(
            "--seed",
            type=int,
            default=CONFIG.master_seed,
            help="Master seed. Defaults to the configured one.",
        )
        return command

    tune = add_dataset_command("tune", "Grid search the hyperparameters.")
    tune.set_defaults(handler=_tune)

    sweep = add_dataset_command("sweep", "Sweep codecs and compression ratios.")
    sweep.add_argument("--agents", type=_list_of(int), help="Agent counts N.")
    sweep.add_argument("--ratios", type=_list_of(int), help="Compression ratios.")
    sweep.add_argument(
        "--codecs", type=_list_of(_codec_name), help="hdc, svd, deflate or none."
    )
    sweep.add_argument("--reps", type=int, help="Repetitions per cell.")
    sweep.add_argument("--out", help="Directory of the results file.")
    sweep.set_defaults(handler=_sweep)

    quantize = add_dataset_command("quantize", "Quantize centralized classifiers.")
    quantize.add_argument("--levels", type=_list_of(int), help="Numbers of levels Q.")
    quantize.add_argument("--reps", type=int, help="Repetitions.")
    quantize.add_argument("--out", help="Directory of the results file.")
    quantize.set_defaults(handler=_quantize)

    report = commands.add_parser("report", help="Chart results files.")
    report.add_argument("results", nargs="+", help="Results CSV files.")
    report.add_argument("--out", help="Directory of the report.")
    report.set_defaults(handler=_report)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit status."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=_LOG_LEVELS[min(args.verbose, len(_LOG_LEVELS) - 1)],
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        args.handler(args)
    except (OSError, ValueError, TypeError, ArithmeticError, RuntimeError) as e:
        logger.error("%s", e)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
