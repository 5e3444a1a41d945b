"""Bit-vector helpers.

Messages and codewords are numpy uint8 arrays holding one bit (0 or 1)
per entry. These helpers cover the conversions the codecs need: byte and
integer packing (big-endian throughout) and symbol grouping.
"""

from __future__ import annotations

import numpy as np

from .errors import UsageError


def as_bits(x, length: int | None = None) -> np.ndarray:
    """Coerce a sequence of 0/1 values to a bit array, checking values."""
    b = np.asarray(x, dtype=np.uint8)
    if b.ndim != 1:
        raise UsageError(f"bit vector must be 1-D, got shape {b.shape}")
    if np.any(b > 1):
        raise UsageError("bit vector entries must be 0 or 1")
    if length is not None and len(b) != length:
        raise UsageError(f"expected {length} bits, got {len(b)}")
    return b


def bits_from_bytes(data: bytes, nbits: int | None = None) -> np.ndarray:
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    return bits if nbits is None else bits[:nbits]


def bits_to_bytes(bits: np.ndarray) -> bytes:
    return np.packbits(as_bits(bits)).tobytes()


def bits_from_int(value: int, width: int) -> np.ndarray:
    """Big-endian: bits[0] is the most significant of `width` bits."""
    if value < 0 or value >> width:
        raise UsageError(f"value {value} does not fit in {width} bits")
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


def bits_to_int(bits: np.ndarray) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | int(b)
    return out


def bits_to_symbols(bits: np.ndarray, symbol_bits: int) -> np.ndarray:
    """Group consecutive bits into symbols, first bit most significant."""
    bits = as_bits(bits)
    if len(bits) % symbol_bits:
        raise UsageError(f"bit length {len(bits)} not divisible by symbol size {symbol_bits}")
    weights = 1 << np.arange(symbol_bits - 1, -1, -1, dtype=np.int32)
    return bits.reshape(-1, symbol_bits).astype(np.int32) @ weights


def symbols_to_bits(symbols: np.ndarray, symbol_bits: int) -> np.ndarray:
    symbols = np.asarray(symbols, dtype=np.int32)
    shifts = np.arange(symbol_bits - 1, -1, -1, dtype=np.int32)
    return ((symbols[:, None] >> shifts) & 1).astype(np.uint8).reshape(-1)
