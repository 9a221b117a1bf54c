"""Command-line surface and file formats."""

from .codec import (
    CodecError,
    decode_certificate,
    decode_complex,
    decode_map,
    encode_certificate,
    encode_complex,
    encode_map,
)
from .main import main

__all__ = [
    "CodecError",
    "decode_certificate",
    "decode_complex",
    "decode_map",
    "encode_certificate",
    "encode_complex",
    "encode_map",
    "main",
]
