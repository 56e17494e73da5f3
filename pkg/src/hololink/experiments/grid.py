"""Tune the hyperparameters of a dataset with a cross-validated grid search.

Every grid point is scored by the mean accuracy of centralized RLS classifiers
over stratified folds of the train split. For a given (H, κ) the hidden
activations are computed once and the whole λ path is solved from one Gram
matrix per fold.
"""

import json
import logging
from collections.abc import Mapping
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from os import PathLike
from pathlib import Path

import numpy as np

from hololink._utils import derive_seed, spawn_rng
from hololink.data import Dataset
from hololink.experiments.specs import GridSpec, Hyperparams
from hololink.model import EncoderConfig, accuracy, encode, train_rls_path

logger = logging.getLogger(__name__)


def stratified_folds(
    labels: np.ndarray, n_folds: int, rng: np.random.Generator
) -> list[np.ndarray]:
    """Split sample positions into stratified folds.

    The members of each class are shuffled and dealt in turns to the folds, so
    every fold holds about the same share of every class.

    Parameters
    ----------
    labels : np.ndarray
        Class of each sample.
    n_folds : int
        Number of folds, at least 2 and at most the number of samples.
    rng : np.random.Generator
        Generator shuffling the members of each class.

    Returns
    -------
    list[np.ndarray]
        Sorted positions into `labels` of each fold. The folds are disjoint and
        cover every position.

    """
    labels = np.asarray(labels)
    if not 2 <= n_folds <= labels.size:
        raise ValueError(
            f"Cannot make {n_folds} folds out of {labels.size} samples."
        )

    parts: list[list[np.ndarray]] = [[] for _ in range(n_folds)]
    offset = 0
    for c in np.unique(labels):
        members = rng.permutation(np.flatnonzero(labels == c))
        for j, chunk in enumerate(np.array_split(members, n_folds)):
            parts[(j + offset) % n_folds].append(chunk)
        # Remainders of the next class start where this one stopped
        offset += members.size % n_folds

    return [np.sort(np.concatenate(chunks)) for chunks in parts]


def best_point(scores: Mapping[Hyperparams, float]) -> Hyperparams:
    """Pick the point with the highest score.

    Ties go to the smaller H, then the larger λ, then the smaller κ.
    """
    if not scores:
        raise ValueError("Cannot pick the best point of an empty grid.")

    return min(
        scores,
        key=lambda p: (-scores[p], p.hidden_size, -p.lam, p.kappa),
    )


def _score_lambda_path(
    ds: Dataset,
    folds: list[np.ndarray],
    lambdas: tuple[float, ...],
    hidden_size: int,
    kappa: int,
    seed: int,
) -> dict[Hyperparams, float]:
    encoder = EncoderConfig.create(
        ds.n_features, hidden_size, kappa, derive_seed(seed, "encoder", 0)
    )
    hidden = encode(ds.train_features, encoder)
    labels = ds.train_labels

    totals = np.zeros(len(lambdas))
    for held_out in folds:
        fit = np.ones(labels.size, dtype=bool)
        fit[held_out] = False
        classifiers = train_rls_path(
            hidden[fit], labels[fit], ds.num_classes, lambdas
        )
        for j, classifier in enumerate(classifiers):
            totals[j] += accuracy(classifier, hidden[held_out], labels[held_out])

    return {
        Hyperparams(hidden_size=hidden_size, lam=lam, kappa=kappa): float(
            totals[j] / len(folds)
        )
        for j, lam in enumerate(lambdas)
    }


def cross_validate(
    ds: Dataset, grid: GridSpec, seed: int, n_folds: int = 5, jobs: int = 1
) -> dict[Hyperparams, float]:
    """Score every point of a grid by its mean cross-validated accuracy.

    Parameters
    ----------
    ds : Dataset
        A normalized dataset. Only its train split is used.
    grid : GridSpec
        The grid of hyperparameters.
    seed : int
        Master seed of the folds and of the encoders.
    n_folds : int, optional
        Number of stratified folds. By default 5.
    jobs : int, optional
        Number of (H, κ) cells scored in parallel. By default 1.

    Returns
    -------
    dict[Hyperparams, float]
        Mean accuracy of each grid point.

    """
    folds = stratified_folds(ds.train_labels, n_folds, spawn_rng(seed, "folds"))
    lambdas = tuple(sorted(set(grid.lambdas)))
    cells = sorted(set(product(grid.hidden_sizes, grid.kappas)))

    scores: dict[Hyperparams, float] = {}
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for cell_scores in pool.map(
            lambda cell: _score_lambda_path(ds, folds, lambdas, *cell, seed), cells
        ):
            scores |= cell_scores

    return scores


def grid_search(
    ds: Dataset, grid: GridSpec, seed: int, n_folds: int = 5, jobs: int = 1
) -> Hyperparams:
    """Find the hyperparameters with the best cross-validated accuracy.

    Every grid point is evaluated with stratified k-fold cross-validation on
    the train split, using centralized RLS classifiers. The result does not
    depend on the order of the grid values.

    Parameters
    ----------
    ds : Dataset
        A normalized dataset.
    grid : GridSpec
        The grid of hyperparameters.
    seed : int
        Master seed of the folds and of the encoders.
    n_folds : int, optional
        Number of folds. By default 5.
    jobs : int, optional
        Width of the worker pool. By default 1.

    Returns
    -------
    Hyperparams
        The best point; ties go to the smaller H, then the larger λ, then the
        smaller κ.

    """
    logger.info(
        "Grid search on '%s' over %d points with %d folds",
        ds.name,
        grid.size,
        n_folds,
    )
    scores = cross_validate(ds, grid, seed, n_folds, jobs)
    best = best_point(scores)
    logger.info(
        "Best point of '%s': H=%d, lambda=%g, kappa=%d (accuracy %.4f)",
        ds.name,
        best.hidden_size,
        best.lam,
        best.kappa,
        scores[best],
    )
    return best


def load_cached_hyperparams(path: str | PathLike, name: str) -> Hyperparams | None:
    """Read the cached hyperparameters of a dataset, if any."""
    path = Path(path)
    if not path.exists():
        return None

    with open(path) as f:
        cache = json.load(f)

    if not isinstance(cache, dict):
        raise TypeError(f"'{path}' must be defined as a dictionary.")

    if name not in cache:
        return None

    logger.info("Using cached hyperparameters of '%s' from %s", name, path)
    return Hyperparams.model_validate(cache[name])


def store_hyperparams(path: str | PathLike, name: str, params: Hyperparams) -> None:
    """Cache the hyperparameters of a dataset, keeping those of the others."""
    path = Path(path)
    cache = {}
    if path.exists():
        with open(path) as f:
            cache = json.load(f)

    cache[name] = params.model_dump()
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(cache, f, indent=4, sort_keys=True)
