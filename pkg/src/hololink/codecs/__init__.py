"""Codecs for sharing classifiers between agents.

The hyperdimensional codec binds chunks of the classifier to random keys and
superposes them into one hypervector. Truncated SVD, DEFLATE and uniform
quantization serve as baselines.
"""

from hololink.codecs._bases import Codec, CodecName, Payload
from hololink.codecs.adapters import (
    AnyCodec,
    DeflateCodec,
    HdcCodec,
    NoCodec,
    SvdCodec,
    make_codec,
)
from hololink.codecs.deflate import (
    BytePayload,
    deflate_bytes,
    deflate_compress,
    deflate_decompress,
    inflate_bytes,
)
from hololink.codecs.hdc import (
    CompressedClassifier,
    Hypervector,
    KeyMode,
    KeySet,
    circular_convolve,
    circular_convolve_direct,
    compress,
    compute_dimension,
    decompress,
    derive_keys,
    involution,
    reshape_pad,
    unreshape,
)
from hololink.codecs.quantize import bits_per_weight, quantize
from hololink.codecs.svd import (
    SvdPayload,
    square_side,
    svd_compress,
    svd_compress_rank,
    svd_decompress,
    svd_rank_for_ratio,
)

__all__ = [
    "AnyCodec",
    "BytePayload",
    "Codec",
    "CodecName",
    "CompressedClassifier",
    "DeflateCodec",
    "HdcCodec",
    "Hypervector",
    "KeyMode",
    "KeySet",
    "NoCodec",
    "Payload",
    "SvdCodec",
    "SvdPayload",
    "bits_per_weight",
    "circular_convolve",
    "circular_convolve_direct",
    "compress",
    "compute_dimension",
    "decompress",
    "deflate_bytes",
    "deflate_compress",
    "deflate_decompress",
    "derive_keys",
    "inflate_bytes",
    "involution",
    "make_codec",
    "quantize",
    "reshape_pad",
    "square_side",
    "svd_compress",
    "svd_compress_rank",
    "svd_decompress",
    "svd_rank_for_ratio",
    "unreshape",
]
