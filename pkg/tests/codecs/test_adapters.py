import math
import unittest

import numpy as np
from pydantic import TypeAdapter, ValidationError

from hololink._utils import relative_error
from hololink.codecs import (
    AnyCodec,
    BytePayload,
    CompressedClassifier,
    DeflateCodec,
    HdcCodec,
    NoCodec,
    SvdCodec,
    SvdPayload,
    make_codec,
)
from hololink.model import ClassifierMatrix


class TestCodecs(unittest.TestCase):
    def setUp(self):
        rng = np.random.default_rng(0)
        self.classifier = ClassifierMatrix(weights=rng.normal(size=(3, 40)), kind="rls")
        self.uncompressed_bytes = len(self.classifier.to_bytes())

    def _round_trip(self, codec, agent_id=2, seed=9):
        payload = codec.encode(self.classifier, agent_id=agent_id, seed=seed)
        decoded = codec.decode(payload, agent_id=agent_id, seed=seed, kind="rls")
        return payload, decoded

    def test_none(self):
        codec = NoCodec()
        payload, decoded = self._round_trip(codec)

        self.assertIs(decoded, self.classifier)
        self.assertEqual(codec.payload_values(payload), 120)
        self.assertEqual(codec.payload_bytes(payload), self.uncompressed_bytes)
        self.assertEqual(codec.achieved_ratio(self.classifier, payload), 1.0)
        self.assertEqual(codec.ratio_param, 1.0)

    def test_deflate(self):
        codec = DeflateCodec()
        payload, decoded = self._round_trip(codec)

        self.assertIsInstance(payload, BytePayload)
        np.testing.assert_array_equal(decoded.weights, self.classifier.weights)
        self.assertEqual(codec.payload_bytes(payload), len(payload.data))
        self.assertEqual(
            codec.payload_values(payload), math.ceil(len(payload.data) / 8)
        )
        self.assertAlmostEqual(
            codec.achieved_ratio(self.classifier, payload),
            self.uncompressed_bytes / len(payload.data),
        )

    def test_hdc_exact_at_ratio_one(self):
        codec = HdcCodec(ratio=1)
        payload, decoded = self._round_trip(codec)

        self.assertIsInstance(payload, CompressedClassifier)
        self.assertLess(relative_error(decoded.weights, self.classifier.weights), 1e-10)

    def test_hdc_payload(self):
        codec = HdcCodec(ratio=8)
        payload, decoded = self._round_trip(codec)

        self.assertEqual(codec.payload_values(payload), 15)
        self.assertEqual(codec.payload_bytes(payload), 26 + 8 * 15)
        self.assertEqual(decoded.weights.shape, (3, 40))
        self.assertEqual(codec.ratio_param, 8.0)

    def test_hdc_needs_the_sender_keys(self):
        codec = HdcCodec(ratio=1)
        payload = codec.encode(self.classifier, agent_id=2, seed=9)

        with self.assertRaises(ValueError):
            codec.decode(payload, agent_id=3, seed=9, kind="rls")

    def test_hdc_per_class(self):
        codec = HdcCodec.per_class()
        payload, _ = self._round_trip(codec)

        self.assertEqual((payload.ratio, payload.dimension), (3, 40))
        self.assertTrue(math.isnan(codec.ratio_param))

    def test_hdc_gaussian_keys(self):
        codec = HdcCodec(ratio=1, key_mode="gaussian")
        _, decoded = self._round_trip(codec)

        # An approximate inverse only
        self.assertLess(relative_error(decoded.weights, self.classifier.weights), 2.0)
        error = relative_error(decoded.weights, self.classifier.weights)
        self.assertGreater(error, 1e-6)

    def test_svd(self):
        codec = SvdCodec(ratio=2.0)
        payload, decoded = self._round_trip(codec)

        self.assertIsInstance(payload, SvdPayload)
        self.assertEqual(codec.payload_values(payload), payload.n_values)
        self.assertLessEqual(codec.payload_values(payload), 60)
        self.assertEqual(decoded.weights.shape, (3, 40))

    def test_svd_ratio_must_exceed_one(self):
        with self.assertRaises(ValidationError):
            SvdCodec(ratio=1.0)

    def test_frozen(self):
        with self.assertRaises(ValidationError):
            HdcCodec(ratio=2).ratio = 3  # type: ignore


class TestMakeCodec(unittest.TestCase):
    def test_names(self):
        self.assertIsInstance(make_codec("none"), NoCodec)
        self.assertIsInstance(make_codec("deflate"), DeflateCodec)
        self.assertEqual(make_codec("hdc", 4), HdcCodec(ratio=4))
        self.assertEqual(make_codec("hdc", 4, "gaussian").key_mode, "gaussian")
        self.assertEqual(make_codec("svd", 2.5), SvdCodec(ratio=2.5))

    def test_svd_needs_ratio(self):
        with self.assertRaises(ValueError):
            make_codec("svd")

    def test_unknown(self):
        with self.assertRaises(ValueError):
            make_codec("zip")  # type: ignore


class TestAnyCodec(unittest.TestCase):
    def test_discriminated_by_name(self):
        adapter = TypeAdapter(AnyCodec)

        self.assertEqual(
            adapter.validate_python({"name": "svd", "ratio": 4}), SvdCodec(ratio=4)
        )
        self.assertEqual(adapter.validate_python({"name": "none"}), NoCodec())
        with self.assertRaises(ValidationError):
            adapter.validate_python({"name": "gzip"})
