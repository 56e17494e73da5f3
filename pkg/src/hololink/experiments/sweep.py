"""Sweep the compression codecs over agent counts, ratios and repetitions."""

import logging
from concurrent.futures import ThreadPoolExecutor

from pydantic import BaseModel, ConfigDict, NonNegativeInt, PositiveInt

from hololink.codecs import KeyMode, make_codec
from hololink.data import Dataset
from hololink.experiments.results import ResultRow, ResultsSink
from hololink.experiments.specs import Hyperparams, SweepSpec
from hololink.model import ClassifierKind
from hololink.simulation import RoundConfig, run_round, small_model_baseline

logger = logging.getLogger(__name__)

_LOSSY = ("hdc", "svd")


class SweepCell(BaseModel):
    """One independent run of a sweep.

    Attributes
    ----------
    n_agents : int
        Number of agents N.
    classifier : ClassifierKind
        Kind of classifier.
    codec : str
        "none", "deflate", "hdc", "svd" or "small".
    ratio : int | None
        Compression ratio of lossy codecs and small models.
    repetition : int
        Index of the repetition.

    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_agents: PositiveInt
    classifier: ClassifierKind
    codec: str
    ratio: PositiveInt | None = None
    repetition: NonNegativeInt


def sweep_cells(sweep: SweepSpec) -> list[SweepCell]:
    """Enumerate the cells of a sweep in a fixed order.

    Per (N, classifier, repetition) there are the uncompressed and DEFLATE
    reference cells, one cell per lossy codec and ratio, and one small-model
    cell per ratio.
    """
    lossy = [codec for codec in sweep.codecs if codec in _LOSSY]
    cells = []
    for n_agents in sweep.agent_counts:
        for classifier in sweep.classifiers:
            for repetition in range(sweep.repetitions):
                common = dict(
                    n_agents=n_agents, classifier=classifier, repetition=repetition
                )
                cells += [
                    SweepCell(codec="none", **common),
                    SweepCell(codec="deflate", **common),
                ]
                cells += [
                    SweepCell(codec=codec, ratio=ratio, **common)
                    for codec in lossy
                    for ratio in sweep.ratios
                ]
                cells += [
                    SweepCell(codec="small", ratio=ratio, **common)
                    for ratio in sweep.ratios
                ]
    return cells


def run_cell(
    ds: Dataset,
    params: Hyperparams,
    cell: SweepCell,
    seed: int,
    key_mode: KeyMode = "unitary",
) -> ResultRow:
    """Run one cell of a sweep.

    The row only depends on its arguments, so any cell can be rerun on its own.
    A failing cell is logged and recorded as a row with an error message.
    """
    meta = dict(
        dataset=ds.name,
        n_agents=cell.n_agents,
        classifier_kind=cell.classifier,
        codec=cell.codec,
        seed=seed,
        repetition=cell.repetition,
    )
    ratio_param = float(cell.ratio) if cell.ratio is not None else 1.0

    try:
        codec = (
            make_codec("none")
            if cell.codec == "small"
            else make_codec(cell.codec, cell.ratio, key_mode)
        )
        cfg = RoundConfig(
            n_agents=cell.n_agents,
            codec=codec,
            classifier=cell.classifier,
            hidden_size=params.hidden_size,
            lam=params.lam,
            kappa=params.kappa,
            seed=seed,
            repetition=cell.repetition,
        )
        if cell.codec == "small":
            assert cell.ratio is not None
            result = small_model_baseline(ds, cfg, cell.ratio)
        else:
            result = run_round(ds, cfg)
    except (ValueError, ArithmeticError, RuntimeError) as e:
        logger.warning("Cell %s failed: %s", cell, e)
        return ResultRow.failed(e, ratio_param=ratio_param, **meta)

    if cell.codec == "deflate":
        ratio_param = result.mean_achieved_ratio

    return ResultRow.from_round(result, ratio_param=ratio_param, **meta)


def sweep_compression(
    ds: Dataset,
    params: Hyperparams,
    sweep: SweepSpec,
    seed: int,
    key_mode: KeyMode = "unitary",
    jobs: int = 1,
    sink: ResultsSink | None = None,
) -> list[ResultRow]:
    """Run every cell of a compression sweep.

    Parameters
    ----------
    ds : Dataset
        A normalized dataset.
    params : Hyperparams
        The tuned hyperparameters of the dataset.
    sweep : SweepSpec
        What to sweep over.
    seed : int
        Master seed.
    key_mode : KeyMode, optional
        How HDC keys are drawn. By default "unitary".
    jobs : int, optional
        Width of the worker pool. By default 1.
    sink : ResultsSink | None, optional
        Where rows are appended as they complete, in cell order.

    Returns
    -------
    list[ResultRow]
        One row per cell, in the order of `sweep_cells`. Failed cells are kept
        as rows with an error.

    """
    cells = sweep_cells(sweep)
    logger.info("Sweeping %d cells on '%s'", len(cells), ds.name)

    rows = []
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for row in pool.map(
            lambda cell: run_cell(ds, params, cell, seed, key_mode), cells
        ):
            rows.append(row)
            if sink is not None:
                sink.append(row)

    failed = sum(not row.ok for row in rows)
    if failed:
        logger.warning("%d of %d cells failed", failed, len(rows))

    return rows


def expected_row_count(sweep: SweepSpec) -> int:
    """Number of rows a sweep produces."""
    lossy = sum(codec in _LOSSY for codec in sweep.codecs)
    per_run = 2 + (lossy + 1) * len(sweep.ratios)
    return (
        len(sweep.agent_counts)
        * len(sweep.classifiers)
        * sweep.repetitions
        * per_run
    )

