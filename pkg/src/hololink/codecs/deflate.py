"""Lossless compression of a classifier with DEFLATE.

The serialized classifier is compressed with zlib at the maximum level, giving a
DEFLATE stream (RFC 1951) in the zlib container (RFC 1950).
"""

import zlib

from pydantic import BaseModel, ConfigDict, NonNegativeInt

from hololink.codecs._exceptions import CorruptStreamError
from hololink.model import ClassifierMatrix
from hololink.model._exceptions import ModelFormatError

_LEVEL = 9


class BytePayload(BaseModel):
    """A DEFLATE stream and the length of the data it inflates to."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    data: bytes
    original_len: NonNegativeInt

    @property
    def ratio(self) -> float:
        """Achieved compression ratio, original bytes / compressed bytes."""
        return self.original_len / len(self.data)


def deflate_bytes(data: bytes) -> BytePayload:
    """Compress arbitrary bytes."""
    return BytePayload(data=zlib.compress(data, _LEVEL), original_len=len(data))


def inflate_bytes(payload: BytePayload) -> bytes:
    """Decompress bytes compressed by `deflate_bytes`.

    Raises
    ------
    CorruptStreamError
        If the stream is invalid or does not inflate to the recorded length.

    """
    try:
        data = zlib.decompress(payload.data)
    except zlib.error as e:
        raise CorruptStreamError(f"Cannot inflate the stream: {e}") from e

    if len(data) != payload.original_len:
        raise CorruptStreamError(
            f"The stream inflated to {len(data)} bytes instead of "
            f"{payload.original_len}."
        )
    return data


def deflate_compress(classifier: ClassifierMatrix) -> BytePayload:
    """Serialize a classifier and compress it."""
    return deflate_bytes(classifier.to_bytes())


def deflate_decompress(payload: BytePayload) -> ClassifierMatrix:
    """Inflate and deserialize a classifier, bit-exactly.

    Raises
    ------
    CorruptStreamError
        If the stream is invalid or does not hold a serialized classifier.

    """
    try:
        return ClassifierMatrix.from_bytes(inflate_bytes(payload))
    except ModelFormatError as e:
        raise CorruptStreamError("The stream does not hold a classifier.") from e
