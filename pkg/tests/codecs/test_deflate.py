import unittest

import numpy as np

from hololink.codecs import (
    BytePayload,
    deflate_bytes,
    deflate_compress,
    deflate_decompress,
    inflate_bytes,
)
from hololink.codecs._exceptions import CorruptStreamError
from hololink.model import ClassifierMatrix


class TestDeflateBytes(unittest.TestCase):
    def test_round_trip(self):
        rng = np.random.default_rng(0)
        samples = [b"", b"\x00" * 5000, bytes(range(256)) * 3]
        samples += [rng.bytes(int(n)) for n in rng.integers(0, 2000, size=1000)]

        for data in samples:
            payload = deflate_bytes(data)
            self.assertEqual(payload.original_len, len(data))
            self.assertEqual(inflate_bytes(payload), data)

    def test_zlib_container(self):
        # RFC 1950 header with the deflate method
        self.assertEqual(deflate_bytes(b"abc").data[0] & 0x0F, 8)

    def test_truncated_stream(self):
        payload = deflate_bytes(bytes(range(200)))

        with self.assertRaises(CorruptStreamError):
            inflate_bytes(payload.model_copy(update={"data": payload.data[:-5]}))

    def test_wrong_length(self):
        payload = deflate_bytes(b"hello")

        with self.assertRaisesRegex(CorruptStreamError, "instead of 6"):
            inflate_bytes(BytePayload(data=payload.data, original_len=6))


class TestDeflateClassifier(unittest.TestCase):
    def test_bit_exact(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            weights = rng.normal(size=tuple(rng.integers(1, 20, size=2)))
            classifier = ClassifierMatrix(weights=weights, kind="rls")

            restored = deflate_decompress(deflate_compress(classifier))
            self.assertEqual(restored.weights.tobytes(), weights.tobytes())

    def test_constant_classifier_compresses(self):
        classifier = ClassifierMatrix(weights=np.zeros((1, 1000)), kind="rls")

        payload = deflate_compress(classifier)
        self.assertLess(len(payload.data), 100)
        self.assertGreater(payload.ratio, 80)

    def test_not_a_classifier(self):
        with self.assertRaises(CorruptStreamError):
            deflate_decompress(deflate_bytes(b"not a classifier"))
