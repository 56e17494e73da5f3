"""Defines the classifier matrix and the two ways of training it.

The classifier W^out is an L×H matrix reading out class scores from hidden
activations. It is either the regularized least squares (RLS) solution against
one-hot targets, or the matrix of per-class centroids of the activations.
"""

import logging
import struct
from collections.abc import Sequence
from typing import Any, Literal, Self

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, field_validator
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from hololink._utils import check_literal, readonly_array
from hololink.model._exceptions import (
    EmptyTestSetError,
    ModelFormatError,
    NumericalFailureError,
)
from hololink.model.encoder import EncoderConfig, HiddenBatch, encode

logger = logging.getLogger(__name__)

type ClassifierKind = Literal["rls", "centroid"]

_MAGIC = b"RVFL"
_VERSION = 1
# magic, version u16, kind u8, L u32, H u32
_HEADER = struct.Struct("<4sHBII")
_KIND_CODES: dict[str, int] = {"rls": 0, "centroid": 1}


class ClassifierMatrix(BaseModel):
    """The trainable readout W^out of a network.

    Attributes
    ----------
    weights : np.ndarray
        Finite matrix of shape (L, H).
    kind : ClassifierKind
        How the matrix was trained, which decides how it predicts.
    empty_classes : tuple[int, ...]
        Classes that had no training sample (centroids only). Their rows are zero.

    """

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    weights: np.ndarray
    kind: ClassifierKind
    empty_classes: tuple[int, ...] = ()

    @field_validator("weights", mode="before")
    @classmethod
    def _check_weights(cls, value: Any) -> np.ndarray:
        weights = readonly_array(value, np.float64)
        if weights.ndim != 2:
            raise ValueError("The weights of a classifier must be a matrix.")
        if not np.all(np.isfinite(weights)):
            raise ValueError("The weights of a classifier must be finite.")
        return weights

    @property
    def num_classes(self) -> int:
        return self.weights.shape[0]

    @property
    def hidden_size(self) -> int:
        return self.weights.shape[1]

    def to_bytes(self) -> bytes:
        """Serialize the classifier.

        The header (magic "RVFL", version u16, kind u8, L u32, H u32) is followed by
        the weights as little-endian float64 values in row-major order.
        """
        header = _HEADER.pack(
            _MAGIC, _VERSION, _KIND_CODES[self.kind], *self.weights.shape
        )
        return header + self.weights.astype("<f8").tobytes(order="C")

    @classmethod
    def from_bytes(cls, data: bytes) -> Self:
        """Deserialize a classifier written by `to_bytes`.

        Raises
        ------
        ModelFormatError
            If the header or the length of the data is invalid.

        """
        if len(data) < _HEADER.size:
            raise ModelFormatError("The data is too short to hold a header.")

        magic, version, kind_code, n_classes, hidden = _HEADER.unpack_from(data)
        if magic != _MAGIC or version != _VERSION:
            raise ModelFormatError("The data is not a serialized classifier.")

        kinds = {code: kind for kind, code in _KIND_CODES.items()}
        if kind_code not in kinds:
            raise ModelFormatError(f"Unknown classifier kind code {kind_code}.")

        body = data[_HEADER.size :]
        if len(body) != 8 * n_classes * hidden:
            raise ModelFormatError("The data length does not match its header.")

        weights = np.frombuffer(body, dtype="<f8").reshape(n_classes, hidden)
        return cls(weights=weights, kind=kinds[kind_code])


def _one_hot(labels: np.ndarray, num_classes: int) -> np.ndarray:
    targets = np.zeros((labels.size, num_classes))
    targets[np.arange(labels.size), labels] = 1.0
    return targets


def train_rls_path(
    hidden: HiddenBatch,
    labels: ArrayLike,
    num_classes: int,
    lambdas: Sequence[float],
) -> list[ClassifierMatrix]:
    """Train RLS classifiers for several regularization coefficients at once.

    The Gram matrix is formed once. For each λ, the normal equations
    (HᵀH + λI) Wᵀ = HᵀY are solved through a Cholesky factorization, where
    Y holds the 0/1 one-hot targets.

    Parameters
    ----------
    hidden : HiddenBatch
        Hidden activations of shape (n, H), n >= 1.
    labels : ArrayLike
        Class of each sample.
    num_classes : int
        Number of classes L.
    lambdas : Sequence[float]
        Positive regularization coefficients.

    Returns
    -------
    list[ClassifierMatrix]
        One RLS classifier per λ, in the given order.

    Raises
    ------
    NumericalFailureError
        If the activations are not finite or a factorization fails.

    """
    hidden = np.asarray(hidden, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if hidden.shape[0] < 1:
        raise ValueError("At least one training sample is needed.")
    if not np.all(np.isfinite(hidden)):
        raise NumericalFailureError("The hidden activations are not finite.")

    gram = hidden.T @ hidden
    rhs = hidden.T @ _one_hot(labels, num_classes)
    identity = np.eye(hidden.shape[1])

    classifiers = []
    for lam in lambdas:
        if lam <= 0:
            raise ValueError("The regularization coefficient must be positive.")
        try:
            factor = cho_factor(gram + lam * identity)
        except LinAlgError as e:
            raise NumericalFailureError(
                f"Cholesky factorization failed for lambda={lam}."
            ) from e
        weights = cho_solve(factor, rhs).T
        classifiers.append(ClassifierMatrix(weights=weights, kind="rls"))

    return classifiers


def train_rls(
    hidden: HiddenBatch, labels: ArrayLike, num_classes: int, lam: float
) -> ClassifierMatrix:
    """Train an RLS classifier: W = YᵀH (HᵀH + λI)⁻¹."""
    return train_rls_path(hidden, labels, num_classes, [lam])[0]


def train_centroids(
    hidden: HiddenBatch, labels: ArrayLike, num_classes: int
) -> ClassifierMatrix:
    """Train a centroids classifier.

    Row c is the mean hidden activation of the samples of class c. A class without
    samples gets a zero row; it is logged and recorded in `empty_classes`.
    """
    hidden = np.asarray(hidden, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if hidden.shape[0] < 1:
        raise ValueError("At least one training sample is needed.")

    weights = np.zeros((num_classes, hidden.shape[1]))
    empty = []
    for c in range(num_classes):
        members = hidden[labels == c]
        if members.shape[0] == 0:
            empty.append(c)
            continue
        weights[c] = members.mean(axis=0)

    if empty:
        logger.warning("Classes %s have no samples; their centroids are zero", empty)

    return ClassifierMatrix(
        weights=weights, kind="centroid", empty_classes=tuple(empty)
    )


def train(
    kind: ClassifierKind,
    hidden: HiddenBatch,
    labels: ArrayLike,
    num_classes: int,
    lam: float,
) -> ClassifierMatrix:
    """Train a classifier of the given kind. λ is ignored by centroids."""
    check_literal("kind", kind, ClassifierKind)
    if kind == "rls":
        return train_rls(hidden, labels, num_classes, lam)
    return train_centroids(hidden, labels, num_classes)


def _scores(classifier: ClassifierMatrix, hidden: np.ndarray) -> np.ndarray:
    raw = hidden @ classifier.weights.T
    if classifier.kind == "rls":
        return raw

    # Cosine similarity, defined as 0 against a zero vector
    norms = np.outer(
        np.linalg.norm(hidden, axis=1), np.linalg.norm(classifier.weights, axis=1)
    )
    return np.divide(raw, norms, out=np.zeros_like(raw), where=norms > 0)


def predict_batch(classifier: ClassifierMatrix, hidden: HiddenBatch) -> np.ndarray:
    """Predict the class of each row of a batch of hidden activations.

    RLS classifiers pick the largest score W·h, centroids the largest cosine
    similarity. Ties go to the lowest class index.
    """
    hidden = np.atleast_2d(np.asarray(hidden, dtype=np.float64))
    if hidden.shape[1] != classifier.hidden_size:
        raise ValueError(
            f"Expected {classifier.hidden_size} hidden activations, "
            f"got {hidden.shape[1]}."
        )
    return np.argmax(_scores(classifier, hidden), axis=1)


def predict(classifier: ClassifierMatrix, hidden: ArrayLike) -> int:
    """Predict the class of a single hidden activation vector."""
    return int(predict_batch(classifier, np.asarray(hidden).reshape(1, -1))[0])


def accuracy(
    classifier: ClassifierMatrix, hidden: HiddenBatch, labels: ArrayLike
) -> float:
    """Calculate the fraction of hidden activations classified as their label.

    Raises
    ------
    EmptyTestSetError
        If there are no labels.

    """
    labels = np.asarray(labels)
    if labels.size == 0:
        raise EmptyTestSetError("Cannot evaluate a classifier on an empty test set.")

    return float(np.mean(predict_batch(classifier, hidden) == labels))


def evaluate(
    classifier: ClassifierMatrix,
    cfg: EncoderConfig,
    features: ArrayLike,
    labels: ArrayLike,
) -> float:
    """Calculate the accuracy of a classifier on a test set.

    Parameters
    ----------
    classifier : ClassifierMatrix
        The classifier to evaluate.
    cfg : EncoderConfig
        The encoder producing the hidden activations of the classifier.
    features : ArrayLike
        Test features of shape (n, d), in [0, 1].
    labels : ArrayLike
        Test labels.

    Returns
    -------
    float
        Fraction of correctly classified test samples.

    Raises
    ------
    EmptyTestSetError
        If the test set has no samples.

    """
    if np.asarray(labels).size == 0:
        raise EmptyTestSetError("Cannot evaluate a classifier on an empty test set.")

    return accuracy(classifier, encode(features, cfg), labels)
