import unittest

import numpy as np

from hololink._utils import relative_error
from hololink.codecs import (
    SvdPayload,
    square_side,
    svd_compress,
    svd_compress_rank,
    svd_decompress,
    svd_rank_for_ratio,
)
from hololink.codecs._exceptions import (
    InvalidRatioError,
    PayloadFormatError,
    ShapeMismatchError,
)
from hololink.model import ClassifierMatrix


class TestRank(unittest.TestCase):
    def test_square_side(self):
        self.assertEqual(square_side(1500, 10), 123)
        self.assertEqual(square_side(2, 2), 2)
        self.assertEqual(square_side(5, 1), 3)

    def test_rank_for_ratio(self):
        self.assertEqual(svd_rank_for_ratio(1500, 10, 10), 6)

    def test_at_least_one(self):
        self.assertEqual(svd_rank_for_ratio(5, 2, 1000), 1)

    def test_at_most_side(self):
        self.assertEqual(svd_rank_for_ratio(2, 2, 1.01), 1)

    def test_invalid_ratio(self):
        with self.assertRaises(InvalidRatioError):
            svd_rank_for_ratio(10, 2, 1)


class TestSvdCompress(unittest.TestCase):
    def test_dominant_component(self):
        classifier = ClassifierMatrix(weights=[[3.0, 0.0], [0.0, 1.0]], kind="rls")

        payload = svd_compress_rank(classifier, 1)
        np.testing.assert_allclose(payload.sigma, [3.0])

        restored = svd_decompress(payload)
        np.testing.assert_allclose(
            restored.weights, [[3.0, 0.0], [0.0, 0.0]], atol=1e-12
        )
        self.assertAlmostEqual(
            np.linalg.norm(restored.weights - classifier.weights), 1.0
        )

    def test_rank_one_is_exact(self):
        rng = np.random.default_rng(0)
        u, v = rng.normal(size=(2, 6))
        classifier = ClassifierMatrix(weights=np.outer(u, v), kind="rls")

        restored = svd_decompress(svd_compress_rank(classifier, 1))
        self.assertLess(relative_error(restored.weights, classifier.weights), 1e-12)

    def test_full_rank_is_exact(self):
        rng = np.random.default_rng(1)
        classifier = ClassifierMatrix(weights=rng.normal(size=(3, 7)), kind="centroid")
        side = square_side(7, 3)

        restored = svd_decompress(svd_compress_rank(classifier, side), kind="centroid")
        self.assertLess(relative_error(restored.weights, classifier.weights), 1e-9)
        self.assertEqual(restored.kind, "centroid")

    def test_zero_matrix(self):
        zero = ClassifierMatrix(weights=np.zeros((2, 8)), kind="rls")

        restored = svd_decompress(svd_compress(zero, 2.0))
        np.testing.assert_array_equal(restored.weights, zero.weights)

    def test_eckart_young(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            side = int(rng.integers(2, 9))
            weights = rng.normal(size=(side, side))
            classifier = ClassifierMatrix(weights=weights, kind="rls")
            sigma = np.linalg.svd(weights, compute_uv=False)

            for rank in range(1, side + 1):
                restored = svd_decompress(svd_compress_rank(classifier, rank))
                residual = np.linalg.norm(weights - restored.weights) ** 2
                np.testing.assert_allclose(
                    residual,
                    np.sum(sigma[rank:] ** 2),
                    rtol=1e-8,
                    atol=1e-8 * np.sum(sigma**2),
                )

    def test_error_decreases_with_rank(self):
        classifier = ClassifierMatrix(
            weights=np.random.default_rng(3).normal(size=(4, 16)), kind="rls"
        )

        errors = [
            relative_error(
                svd_decompress(svd_compress_rank(classifier, rank)).weights,
                classifier.weights,
            )
            for rank in range(1, 9)
        ]
        self.assertTrue(all(b <= a + 1e-12 for a, b in zip(errors, errors[1:])))

    def test_payload_size(self):
        classifier = ClassifierMatrix(
            weights=np.random.default_rng(4).normal(size=(10, 150)), kind="rls"
        )

        payload = svd_compress(classifier, 4)
        self.assertEqual(payload.side, 39)
        self.assertEqual(payload.rank, svd_rank_for_ratio(150, 10, 4))
        self.assertEqual(payload.n_values, payload.rank * 79)
        self.assertLessEqual(payload.n_values, 1500 / 4)

    def test_invalid_rank(self):
        classifier = ClassifierMatrix(weights=np.ones((2, 2)), kind="rls")

        with self.assertRaises(ValueError):
            svd_compress_rank(classifier, 3)


class TestSvdPayload(unittest.TestCase):
    def setUp(self):
        classifier = ClassifierMatrix(
            weights=np.random.default_rng(5).normal(size=(3, 9)), kind="rls"
        )
        self.payload = svd_compress_rank(classifier, 2)

    def test_sorted_singular_values(self):
        with self.assertRaisesRegex(ValueError, "descending"):
            SvdPayload(
                u=np.zeros((2, 2)),
                sigma=[1.0, 2.0],
                v=np.zeros((2, 2)),
                hidden_size=2,
                num_classes=2,
                side=2,
                rank=2,
            )

    def test_wrong_side(self):
        with self.assertRaisesRegex(ValueError, "square side"):
            self.payload.model_validate(self.payload.model_dump() | {"side": 4})

    def test_factor_shape(self):
        payload = SvdPayload(
            u=np.zeros((3, 1)),
            sigma=[1.0],
            v=np.zeros((2, 1)),
            hidden_size=2,
            num_classes=2,
            side=2,
            rank=1,
        )

        with self.assertRaises(ShapeMismatchError):
            svd_decompress(payload)

    def test_wire_format(self):
        data = self.payload.to_bytes()

        self.assertEqual(data[:4], b"SVDT")
        self.assertEqual(len(data), 4 + 2 + 4 * 4 + 8 * self.payload.n_values)

        restored = SvdPayload.from_bytes(data)
        np.testing.assert_array_equal(restored.u, self.payload.u)
        np.testing.assert_array_equal(restored.sigma, self.payload.sigma)
        np.testing.assert_array_equal(restored.v, self.payload.v)

    def test_bad_bytes(self):
        data = self.payload.to_bytes()

        with self.assertRaises(PayloadFormatError):
            SvdPayload.from_bytes(data[:8])
        with self.assertRaises(PayloadFormatError):
            SvdPayload.from_bytes(b"HDCW" + data[4:])
        with self.assertRaises(PayloadFormatError):
            SvdPayload.from_bytes(data[:-8])
