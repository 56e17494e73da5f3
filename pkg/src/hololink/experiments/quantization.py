"""Measure how uniform quantization of the classifier affects accuracy.

The study runs the centralized scenario (N = 1): a classifier of each kind is
trained on the whole train split, its weights are snapped to Q levels and the
quantized classifier is evaluated on the test split.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np

from hololink.codecs import bits_per_weight, quantize
from hololink.codecs._exceptions import InvalidLevelsError
from hololink.data import Dataset
from hololink.experiments.results import ResultRow, ResultsSink
from hololink.experiments.specs import Hyperparams
from hololink.model import ClassifierKind, accuracy, encode, train
from hololink.simulation import RoundConfig

logger = logging.getLogger(__name__)

_KINDS: tuple[ClassifierKind, ...] = ("rls", "centroid")


def quantization_study(
    ds: Dataset,
    params: Hyperparams,
    levels: Sequence[int],
    repetitions: int,
    seed: int,
    sink: ResultsSink | None = None,
) -> list[ResultRow]:
    """Evaluate quantized centralized classifiers of both kinds.

    Parameters
    ----------
    ds : Dataset
        A normalized dataset.
    params : Hyperparams
        The tuned hyperparameters of the dataset.
    levels : Sequence[int]
        Numbers of quantization levels Q, all at least 2.
    repetitions : int
        Number of repetitions, each with a new encoder.
    seed : int
        Master seed.
    sink : ResultsSink | None, optional
        Where rows are appended.

    Returns
    -------
    list[ResultRow]
        One row per (repetition, kind, Q) with codec "quant{Q}", then one
        unquantized baseline row per kind averaged over the repetitions.

    Raises
    ------
    InvalidLevelsError
        If a number of levels is below 2.
    EmptyTestSetError
        If the test split is empty.

    """
    if repetitions < 1:
        raise ValueError("At least one repetition is needed.")
    for q in levels:
        if q < 2:
            raise InvalidLevelsError(
                f"At least 2 quantization levels are needed, got {q}."
            )

    rows = []
    baselines: dict[ClassifierKind, list[float]] = {kind: [] for kind in _KINDS}
    n_weights = ds.num_classes * params.hidden_size

    for repetition in range(repetitions):
        cfg = RoundConfig(
            n_agents=1,
            hidden_size=params.hidden_size,
            lam=params.lam,
            kappa=params.kappa,
            seed=seed,
            repetition=repetition,
        )
        encoder = cfg.encoder(ds.n_features)
        train_hidden = encode(ds.train_features, encoder)
        test_hidden = encode(ds.test_features, encoder)

        for kind in _KINDS:
            classifier = train(
                kind, train_hidden, ds.train_labels, ds.num_classes, params.lam
            )
            baselines[kind].append(accuracy(classifier, test_hidden, ds.test_labels))

            for q in levels:
                quantized = accuracy(
                    quantize(classifier, q), test_hidden, ds.test_labels
                )
                rows.append(
                    ResultRow(
                        dataset=ds.name,
                        n_agents=1,
                        classifier_kind=kind,
                        codec=f"quant{q}",
                        ratio_param=float(q),
                        seed=seed,
                        repetition=repetition,
                        mean_accuracy=quantized,
                        per_agent_min=quantized,
                        per_agent_max=quantized,
                        payload_values_per_agent=float(n_weights),
                        payload_bytes_per_agent=float(
                            math.ceil(n_weights * bits_per_weight(q) / 8)
                        ),
                    )
                )

        logger.debug(
            "Quantization repetition %d of %d done", repetition + 1, repetitions
        )

    for kind in _KINDS:
        rows.append(
            ResultRow(
                dataset=ds.name,
                n_agents=1,
                classifier_kind=kind,
                codec="none",
                ratio_param=1.0,
                seed=seed,
                repetition=-1,
                mean_accuracy=float(np.mean(baselines[kind])),
                per_agent_min=min(baselines[kind]),
                per_agent_max=max(baselines[kind]),
                payload_values_per_agent=float(n_weights),
                payload_bytes_per_agent=float(8 * n_weights),
            )
        )

    if sink is not None:
        sink.extend(rows)

    return rows
