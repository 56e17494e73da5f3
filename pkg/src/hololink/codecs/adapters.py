"""Defines the codecs agents can share their classifiers with."""

import math
from typing import Annotated, Literal, override

from pydantic import Field, PositiveInt

from hololink.codecs._bases import Codec, CodecName, Payload
from hololink.codecs.deflate import BytePayload, deflate_compress, deflate_decompress
from hololink.codecs.hdc import (
    CompressedClassifier,
    KeyMode,
    compress,
    compute_dimension,
    decompress,
    derive_keys,
)
from hololink.codecs.svd import SvdPayload, svd_compress, svd_decompress
from hololink.model import ClassifierKind, ClassifierMatrix


class NoCodec(Codec):
    """Send classifiers as they are."""

    name: Literal["none"] = "none"

    @override
    def encode(
        self, classifier: ClassifierMatrix, *, agent_id: int, seed: int
    ) -> ClassifierMatrix:
        return classifier

    @override
    def decode(
        self, payload: Payload, *, agent_id: int, seed: int, kind: ClassifierKind
    ) -> ClassifierMatrix:
        assert isinstance(payload, ClassifierMatrix)
        return payload

    @override
    def payload_values(self, payload: Payload) -> int:
        assert isinstance(payload, ClassifierMatrix)
        return payload.weights.size

    @override
    def payload_bytes(self, payload: Payload) -> int:
        assert isinstance(payload, ClassifierMatrix)
        return len(payload.to_bytes())


class DeflateCodec(Codec):
    """Send serialized classifiers compressed losslessly with DEFLATE."""

    name: Literal["deflate"] = "deflate"

    @override
    def encode(
        self, classifier: ClassifierMatrix, *, agent_id: int, seed: int
    ) -> BytePayload:
        return deflate_compress(classifier)

    @override
    def decode(
        self, payload: Payload, *, agent_id: int, seed: int, kind: ClassifierKind
    ) -> ClassifierMatrix:
        assert isinstance(payload, BytePayload)
        return deflate_decompress(payload)

    @override
    def payload_values(self, payload: Payload) -> int:
        # Equivalent number of 64-bit values
        assert isinstance(payload, BytePayload)
        return math.ceil(len(payload.data) / 8)

    @override
    def payload_bytes(self, payload: Payload) -> int:
        assert isinstance(payload, BytePayload)
        return len(payload.data)


class HdcCodec(Codec):
    """Send classifiers compressed into one hypervector.

    Attributes
    ----------
    ratio : int | None
        The compression ratio R, at most HL. If None, one key is used per class
        (R = L).
    key_mode : KeyMode
        How the keys are drawn. By default "unitary".

    """

    name: Literal["hdc"] = "hdc"
    ratio: PositiveInt | None = None
    key_mode: KeyMode = "unitary"

    @classmethod
    def per_class(cls, key_mode: KeyMode = "unitary") -> "HdcCodec":
        """Create the codec with one key per class."""
        return cls(ratio=None, key_mode=key_mode)

    @property
    @override
    def ratio_param(self) -> float:
        return float(self.ratio) if self.ratio is not None else math.nan

    def _ratio_for(self, classifier: ClassifierMatrix) -> int:
        return self.ratio if self.ratio is not None else classifier.num_classes

    @override
    def encode(
        self, classifier: ClassifierMatrix, *, agent_id: int, seed: int
    ) -> CompressedClassifier:
        ratio = self._ratio_for(classifier)
        dimension = compute_dimension(
            classifier.hidden_size, classifier.num_classes, ratio
        )
        keys = derive_keys(seed, agent_id, ratio, dimension, self.key_mode)
        return compress(classifier, keys)

    @override
    def decode(
        self, payload: Payload, *, agent_id: int, seed: int, kind: ClassifierKind
    ) -> ClassifierMatrix:
        assert isinstance(payload, CompressedClassifier)
        keys = derive_keys(
            seed, agent_id, payload.ratio, payload.dimension, self.key_mode
        )
        return decompress(payload, keys, kind)

    @override
    def payload_values(self, payload: Payload) -> int:
        assert isinstance(payload, CompressedClassifier)
        return payload.dimension

    @override
    def payload_bytes(self, payload: Payload) -> int:
        assert isinstance(payload, CompressedClassifier)
        return len(payload.to_bytes())


class SvdCodec(Codec):
    """Send classifiers compressed with a truncated SVD.

    Attributes
    ----------
    ratio : float
        The desired compression ratio, larger than 1.

    """

    name: Literal["svd"] = "svd"
    ratio: float = Field(gt=1)

    @property
    @override
    def ratio_param(self) -> float:
        return self.ratio

    @override
    def encode(
        self, classifier: ClassifierMatrix, *, agent_id: int, seed: int
    ) -> SvdPayload:
        return svd_compress(classifier, self.ratio)

    @override
    def decode(
        self, payload: Payload, *, agent_id: int, seed: int, kind: ClassifierKind
    ) -> ClassifierMatrix:
        assert isinstance(payload, SvdPayload)
        return svd_decompress(payload, kind)

    @override
    def payload_values(self, payload: Payload) -> int:
        assert isinstance(payload, SvdPayload)
        return payload.n_values

    @override
    def payload_bytes(self, payload: Payload) -> int:
        assert isinstance(payload, SvdPayload)
        return len(payload.to_bytes())


AnyCodec = Annotated[
    NoCodec | DeflateCodec | HdcCodec | SvdCodec, Field(discriminator="name")
]


def make_codec(
    name: CodecName, ratio: float | None = None, key_mode: KeyMode = "unitary"
) -> Codec:
    """Create a codec from its name and, for lossy codecs, its ratio."""
    match name:
        case "none":
            return NoCodec()
        case "deflate":
            return DeflateCodec()
        case "hdc":
            return HdcCodec(
                ratio=int(ratio) if ratio is not None else None, key_mode=key_mode
            )
        case "svd":
            if ratio is None:
                raise ValueError("The SVD codec needs a compression ratio.")
            return SvdCodec(ratio=ratio)
        case _:
            raise ValueError(f"Invalid codec name: {name}")
