"""Defines the private abstract base class of codecs.

Classes of the public API are derived.
"""

from abc import ABC, abstractmethod
from typing import Literal

from pydantic import BaseModel, ConfigDict

from hololink.codecs.deflate import BytePayload
from hololink.codecs.hdc import CompressedClassifier
from hololink.codecs.svd import SvdPayload
from hololink.model import ClassifierKind, ClassifierMatrix

type CodecName = Literal["none", "deflate", "hdc", "svd"]
type Payload = ClassifierMatrix | BytePayload | CompressedClassifier | SvdPayload


class Codec(BaseModel, ABC):
    """Abstract base class for the ways agents share their classifiers.

    A codec is configuration (eg. a compression ratio) plus the two ends of a
    transmission: the sender encodes its classifier into a payload, and each
    receiver decodes the payload into a classifier of the same shape.

    Encoding and decoding are pure given (agent_id, seed), which is all a receiver
    needs to know to regenerate any random state of the sender.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: CodecName

    @abstractmethod
    def encode(
        self, classifier: ClassifierMatrix, *, agent_id: int, seed: int
    ) -> Payload:
        """Encode the classifier of an agent into a payload."""

    @abstractmethod
    def decode(
        self, payload: Payload, *, agent_id: int, seed: int, kind: ClassifierKind
    ) -> ClassifierMatrix:
        """Decode a payload sent by an agent into a classifier of the given kind."""

    @abstractmethod
    def payload_values(self, payload: Payload) -> int:
        """Count the numeric values a payload transmits."""

    @abstractmethod
    def payload_bytes(self, payload: Payload) -> int:
        """Count the bytes a payload occupies in its wire format."""

    @property
    def ratio_param(self) -> float:
        """The compression parameter of the codec, as reported in results."""
        return 1.0

    def achieved_ratio(self, classifier: ClassifierMatrix, payload: Payload) -> float:
        """Uncompressed serialized bytes over payload bytes."""
        return len(classifier.to_bytes()) / self.payload_bytes(payload)
