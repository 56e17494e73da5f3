"""Render a results table into a CSV file and SVG charts.

Every (dataset, N) gets a chart of the mean accuracy against the compression
ratio, with one line per lossy codec and classifier kind, a horizontal line per
uncompressed baseline, and bars at the ratio DEFLATE achieved. Every dataset
with quantization rows also gets a chart of the accuracy against Q.
"""

import logging
from os import PathLike
from pathlib import Path

import matplotlib
import pandas as pd
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from hololink.experiments._exceptions import ReportError, ReportIOError
from hololink.experiments.results import ResultRow, to_frame, write_results

logger = logging.getLogger(__name__)

_SERIES = {"hdc": "HDC", "svd": "SVD", "small": "small-model"}
_KIND_LABELS = {"rls": "RLS", "centroid": "centroid"}
_KIND_STYLES = {"rls": "-", "centroid": "--"}
_CODEC_COLORS = {"hdc": "tab:blue", "svd": "tab:orange", "small": "tab:green"}
# Fixed ids and no date keep the SVG text a function of the table
_SVG_RC = {"svg.hashsalt": "hololink", "svg.fonttype": "path"}
_SVG_METADATA = {"Date": None}


def _mean_accuracy(frame: pd.DataFrame, keys: list[str]) -> pd.DataFrame:
    return (
        frame.groupby(keys, sort=True)["mean_accuracy"].mean().reset_index()
    )


def _compression_chart(frame: pd.DataFrame, dataset: str, n_agents: int) -> Figure:
    fig = Figure(figsize=(7, 4.5))
    FigureCanvasAgg(fig)
    ax = fig.add_subplot()

    lossy = frame[frame["codec"].isin(list(_SERIES))]
    for (codec, kind), group in _mean_accuracy(
        lossy, ["codec", "classifier_kind", "ratio_param"]
    ).groupby(["codec", "classifier_kind"], sort=True):
        ax.plot(
            group["ratio_param"],
            group["mean_accuracy"],
            _KIND_STYLES.get(kind, ":"),
            marker="o",
            color=_CODEC_COLORS[codec],
            label=f"{_SERIES[codec]}-{_KIND_LABELS.get(kind, kind)}",
        )

    baselines = _mean_accuracy(frame[frame["codec"] == "none"], ["classifier_kind"])
    for kind, accuracy in zip(
        baselines["classifier_kind"], baselines["mean_accuracy"], strict=True
    ):
        ax.axhline(
            accuracy,
            color="black",
            linestyle=_KIND_STYLES.get(kind, ":"),
            linewidth=1,
            label=f"uncompressed-{_KIND_LABELS.get(kind, kind)}",
        )

    deflate = frame[frame["codec"] == "deflate"]
    if not deflate.empty:
        bars = deflate.groupby("classifier_kind", sort=True)[
            ["ratio_param", "mean_accuracy"]
        ].mean()
        for kind, (ratio, accuracy) in bars.iterrows():
            ax.bar(
                ratio,
                accuracy,
                width=0.25,
                alpha=0.3,
                color="gray",
                label=f"DEFLATE-{_KIND_LABELS.get(kind, kind)}",
            )

    ax.set_title(f"{dataset}, N = {n_agents}")
    ax.set_xlabel("Compression ratio")
    ax.set_ylabel("Mean accuracy")
    ax.grid(True, alpha=0.3)
    if ax.get_legend_handles_labels()[0]:
        ax.legend(fontsize="small")
    return fig


def _quantization_chart(frame: pd.DataFrame, dataset: str) -> Figure:
    fig = Figure(figsize=(7, 4.5))
    FigureCanvasAgg(fig)
    ax = fig.add_subplot()

    quantized = frame[frame["codec"].str.startswith("quant")]
    for kind, group in _mean_accuracy(
        quantized, ["classifier_kind", "ratio_param"]
    ).groupby("classifier_kind", sort=True):
        ax.plot(
            group["ratio_param"],
            group["mean_accuracy"],
            _KIND_STYLES.get(kind, ":"),
            marker="o",
            label=_KIND_LABELS.get(kind, kind),
        )

    baselines = frame[
        (frame["codec"] == "none")
        & (frame["n_agents"] == 1)
        & (frame["repetition"] < 0)
    ]
    for kind, accuracy in zip(
        baselines["classifier_kind"], baselines["mean_accuracy"], strict=True
    ):
        ax.axhline(
            accuracy,
            color="black",
            linestyle=_KIND_STYLES.get(kind, ":"),
            linewidth=1,
            label=f"unquantized-{_KIND_LABELS.get(kind, kind)}",
        )

    ax.set_xscale("log", base=2)
    ax.set_title(f"{dataset}, quantized classifiers")
    ax.set_xlabel("Quantization levels")
    ax.set_ylabel("Mean accuracy")
    ax.grid(True, alpha=0.3)
    if ax.get_legend_handles_labels()[0]:
        ax.legend(fontsize="small")
    return fig


def _save(fig: Figure, path: Path) -> Path:
    with matplotlib.rc_context(_SVG_RC):
        fig.savefig(path, format="svg", metadata=_SVG_METADATA)
    return path


def emit_report(
    rows: list[ResultRow], out_dir: str | PathLike, csv_name: str = "results.csv"
) -> list[Path]:
    """Write the results table and its charts.

    Parameters
    ----------
    rows : list[ResultRow]
        The results table. Failed rows are kept in the CSV but not charted.
    out_dir : str | PathLike
        Directory of the report. Created if missing.
    csv_name : str, optional
        File name of the CSV table. By default "results.csv".

    Returns
    -------
    list[Path]
        The CSV file, then one chart "{dataset}_N{N}.svg" per (dataset, N) of
        the sweep rows and one chart "{dataset}_quantization.svg" per dataset
        with quantization rows.

    Raises
    ------
    ReportError
        If there are no rows.
    ReportIOError
        If a file cannot be written.

    """
    if not rows:
        raise ReportError("Cannot emit a report of an empty results table.")

    out_dir = Path(out_dir)
    frame = to_frame(rows)
    ok = frame[frame["error"] == ""]
    is_quant = ok["codec"].str.startswith("quant")
    quant_datasets = set(ok.loc[is_quant, "dataset"])
    # The unquantized baselines of a study belong to its quantization chart
    in_study = ok["dataset"].isin(quant_datasets) & (ok["n_agents"] == 1)
    sweep = ok[~is_quant & ~(in_study & (ok["repetition"] < 0))]

    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        written = [write_results(rows, out_dir / csv_name)]

        for (dataset, n_agents), group in sweep.groupby(
            ["dataset", "n_agents"], sort=True
        ):
            written.append(
                _save(
                    _compression_chart(group, dataset, n_agents),
                    out_dir / f"{dataset}_N{n_agents}.svg",
                )
            )

        for dataset in sorted(quant_datasets):
            written.append(
                _save(
                    _quantization_chart(ok[ok["dataset"] == dataset], dataset),
                    out_dir / f"{dataset}_quantization.svg",
                )
            )
    except OSError as e:
        raise ReportIOError(f"Cannot write the report to '{out_dir}': {e}") from e

    logger.info("Wrote %d report files to %s", len(written), out_dir)
    return written
