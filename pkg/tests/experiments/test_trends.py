"""Directional checks of the compression trade-offs on a synthetic dataset."""

import unittest
from collections import defaultdict
from itertools import pairwise

import numpy as np

from hololink.experiments import (
    Hyperparams,
    SweepSpec,
    quantization_study,
    sweep_compression,
)
from hololink.experiments.cli import load_experiment_dataset

_PARAMS = Hyperparams(hidden_size=200, lam=1.0, kappa=3)
# Class rows of W do not line up in the SVD square: 3·350 values on a side of 33
_CODEC_PARAMS = Hyperparams(hidden_size=350, lam=32.0, kappa=3)
_RATIOS = (1, 2, 4, 8, 16)
_TOLERANCE = 0.01


def _mean_accuracies(rows):
    accuracies = defaultdict(list)
    for row in rows:
        if row.ok:
            # DEFLATE rows carry the ratio they achieved
            ratio = None if row.codec == "deflate" else row.ratio_param
            key = (row.n_agents, row.classifier_kind, row.codec, ratio)
            accuracies[key].append(row.mean_accuracy)
    return {key: float(np.mean(values)) for key, values in accuracies.items()}


class TestCompressionTrends(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.ds = load_experiment_dataset("synthetic", seed=0)
        sweep = SweepSpec(
            agent_counts=(10,), ratios=_RATIOS, codecs=("hdc", "svd"), repetitions=10
        )
        cls.means = _mean_accuracies(
            sweep_compression(cls.ds, _CODEC_PARAMS, sweep, seed=0)
        )

    def test_uncompressed_is_an_upper_bound(self):
        for kind in ("rls", "centroid"):
            bound = self.means[10, kind, "none", 1.0]
            for codec in ("hdc", "svd"):
                for ratio in _RATIOS:
                    accuracy = self.means.get((10, kind, codec, float(ratio)))
                    if accuracy is not None:
                        self.assertLessEqual(accuracy, bound + _TOLERANCE)

    def test_hdc_degrades_with_the_ratio(self):
        for kind in ("rls", "centroid"):
            accuracies = [self.means[10, kind, "hdc", float(r)] for r in _RATIOS]
            for previous, current in pairwise(accuracies):
                self.assertLessEqual(current, previous + _TOLERANCE)

    def test_rls_beats_centroid(self):
        for n_agents, kind, codec, ratio in self.means:
            if kind == "rls":
                self.assertGreaterEqual(
                    self.means[n_agents, "rls", codec, ratio],
                    self.means[n_agents, "centroid", codec, ratio] - _TOLERANCE,
                )

    def test_hdc_beats_svd(self):
        cells = [
            (kind, float(ratio))
            for kind in ("rls", "centroid")
            for ratio in _RATIOS
            if (10, kind, "svd", float(ratio)) in self.means
        ]
        wins = sum(
            self.means[10, kind, "hdc", ratio] >= self.means[10, kind, "svd", ratio]
            for kind, ratio in cells
        )

        self.assertEqual(len(cells), 8)
        self.assertGreater(wins, len(cells) / 2)


class TestAgentCountTrend(unittest.TestCase):
    def test_more_agents_average_out_the_noise(self):
        ds = load_experiment_dataset("synthetic", seed=0)
        sweep = SweepSpec(
            agent_counts=(10, 100),
            ratios=(8,),
            codecs=("hdc",),
            classifiers=("rls",),
            repetitions=10,
        )
        means = _mean_accuracies(sweep_compression(ds, _PARAMS, sweep, seed=0))

        gaps = {
            n: means[n, "rls", "none", 1.0] - means[n, "rls", "hdc", 8.0]
            for n in (10, 100)
        }
        self.assertLessEqual(gaps[100], gaps[10])


class TestQuantizationTrend(unittest.TestCase):
    def test_one_byte_preserves_accuracy(self):
        ds = load_experiment_dataset("synthetic", seed=0)
        rows = quantization_study(ds, _PARAMS, (3, 255), repetitions=5, seed=0)
        means = _mean_accuracies(rows)
        baselines = {row.classifier_kind: row.mean_accuracy for row in rows[-2:]}

        for kind, baseline in baselines.items():
            self.assertGreaterEqual(means[1, kind, "quant255", 255.0], baseline - 0.01)

        drop = {
            q: baselines["rls"] - means[1, "rls", f"quant{q}", float(q)]
            for q in (3, 255)
        }
        self.assertGreaterEqual(drop[3], drop[255])
