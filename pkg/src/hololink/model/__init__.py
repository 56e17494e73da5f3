"""The integer RVFL network: a shared random encoder and a trainable readout."""

from hololink.model.classifiers import (
    ClassifierKind,
    ClassifierMatrix,
    accuracy,
    evaluate,
    predict,
    predict_batch,
    train,
    train_centroids,
    train_rls,
    train_rls_path,
)
from hololink.model.encoder import (
    EncoderConfig,
    HiddenBatch,
    encode,
    hidden_activations,
    make_feature_keys,
    thermometer_encode,
)

__all__ = [
    "ClassifierKind",
    "ClassifierMatrix",
    "EncoderConfig",
    "HiddenBatch",
    "accuracy",
    "encode",
    "evaluate",
    "hidden_activations",
    "make_feature_keys",
    "predict",
    "predict_batch",
    "thermometer_encode",
    "train",
    "train_centroids",
    "train_rls",
    "train_rls_path",
]
