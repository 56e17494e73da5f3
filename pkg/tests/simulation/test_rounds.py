import unittest

import numpy as np
from pydantic import ValidationError

from hololink.codecs import DeflateCodec, HdcCodec, NoCodec, SvdCodec
from hololink.data import make_blobs, normalize_features, split_train_test
from hololink.model._exceptions import EmptyTestSetError
from hololink.simulation import (
    RoundConfig,
    run_round,
    small_hidden_size,
    small_model_baseline,
    train_centralized,
)
from hololink.simulation._exceptions import AgentCodecError


def _blobs(n: int = 400):
    raw = make_blobs(n, 4, 3, np.random.default_rng(0))
    return normalize_features(split_train_test(raw, np.random.default_rng(1)))


class TestRoundConfig(unittest.TestCase):
    def test_codec_from_dict(self):
        cfg = RoundConfig(n_agents=3, hidden_size=10, codec={"name": "svd", "ratio": 3})

        self.assertEqual(cfg.codec, SvdCodec(ratio=3))

    def test_default_codec(self):
        self.assertEqual(RoundConfig(n_agents=3, hidden_size=10).codec, NoCodec())

    def test_seeds_differ_per_repetition(self):
        a = RoundConfig(n_agents=3, hidden_size=10, seed=1, repetition=0)
        b = a.model_copy(update={"repetition": 1})

        self.assertNotEqual(a.encoder_seed, b.encoder_seed)
        self.assertNotEqual(a.key_seed, b.key_seed)
        self.assertNotEqual(a.encoder_seed, a.key_seed)

    def test_shared_encoder(self):
        cfg = RoundConfig(n_agents=3, hidden_size=10, seed=1)

        np.testing.assert_array_equal(
            cfg.encoder(4).feature_keys, cfg.encoder(4).feature_keys
        )

    def test_invalid(self):
        with self.assertRaises(ValidationError):
            RoundConfig(n_agents=0, hidden_size=10)
        with self.assertRaises(ValidationError):
            RoundConfig(n_agents=2, hidden_size=10, classifier="lda")


class TestRunRound(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.ds = _blobs()
        cls.base = RoundConfig(n_agents=10, hidden_size=100, lam=1.0, kappa=3, seed=7)

    def test_single_agent_equals_centralized(self):
        for kind in ("rls", "centroid"):
            cfg = self.base.model_copy(update={"n_agents": 1, "classifier": kind})

            result = run_round(self.ds, cfg)
            _, accuracy = train_centralized(self.ds, cfg)
            self.assertEqual(result.accuracies, (accuracy,))

    def test_result_shape(self):
        result = run_round(self.ds, self.base)

        self.assertEqual(len(result.accuracies), 10)
        self.assertEqual(result.payload_values, (300,) * 10)
        self.assertEqual(result.achieved_ratios, (1.0,) * 10)
        self.assertLessEqual(result.min_accuracy, result.mean_accuracy)
        self.assertLessEqual(result.mean_accuracy, result.max_accuracy)

    def test_deflate_matches_uncompressed(self):
        for kind in ("rls", "centroid"):
            cfg = self.base.model_copy(update={"classifier": kind})

            plain = run_round(self.ds, cfg)
            deflated = run_round(
                self.ds, cfg.model_copy(update={"codec": DeflateCodec()})
            )
            self.assertEqual(plain.accuracies, deflated.accuracies)
            self.assertLess(
                deflated.mean_payload_bytes, plain.mean_payload_bytes * 1.01
            )

    def test_deterministic(self):
        cfg = self.base.model_copy(update={"codec": HdcCodec(ratio=4)})

        self.assertEqual(run_round(self.ds, cfg), run_round(self.ds, cfg))

    def test_hdc_does_not_beat_uncompressed(self):
        gaps = []
        for repetition in range(5):
            cfg = self.base.model_copy(update={"repetition": repetition})
            plain = run_round(self.ds, cfg).mean_accuracy
            hdc = run_round(
                self.ds, cfg.model_copy(update={"codec": HdcCodec(ratio=8)})
            ).mean_accuracy
            gaps.append(hdc - plain)

        self.assertLessEqual(np.mean(gaps), 0.01)

    def test_codec_failure(self):
        cfg = self.base.model_copy(update={"codec": HdcCodec(ratio=1000)})

        with self.assertRaises(AgentCodecError):
            run_round(self.ds, cfg)

    def test_empty_test_split(self):
        ds = normalize_features(make_blobs(100, 4, 2, np.random.default_rng(0)))
        cfg = RoundConfig(n_agents=2, hidden_size=20)

        with self.assertRaises(EmptyTestSetError):
            run_round(ds, cfg)


class TestSmallModel(unittest.TestCase):
    def test_hidden_size(self):
        self.assertEqual(small_hidden_size(1500, 10), 150)
        self.assertEqual(small_hidden_size(100, 1), 100)
        self.assertEqual(small_hidden_size(5, 8), 1)

    def test_payload_parity(self):
        for hidden in (1, 7, 50, 1500):
            for n_classes in (2, 3, 10, 26):
                for ratio in (1, 2, 3, 7, 16, 32):
                    small = small_hidden_size(hidden, ratio)
                    dimension = -(-hidden * n_classes // ratio)
                    self.assertLessEqual(abs(small * n_classes - dimension), n_classes)

    def test_ratio_one_is_the_baseline(self):
        ds = _blobs(200)
        cfg = RoundConfig(n_agents=4, hidden_size=60, seed=3)

        self.assertEqual(small_model_baseline(ds, cfg, 1), run_round(ds, cfg))

    def test_smaller_payload(self):
        ds = _blobs(200)
        cfg = RoundConfig(n_agents=4, hidden_size=60, seed=3, codec=HdcCodec(ratio=4))

        result = small_model_baseline(ds, cfg, 4)
        self.assertEqual(result.payload_values, (45,) * 4)

    def test_invalid_ratio(self):
        ds = _blobs(200)
        cfg = RoundConfig(n_agents=2, hidden_size=10)

        with self.assertRaises(ValueError):
            small_model_baseline(ds, cfg, 0)
