"""Binary spatter codes.

Bit strings are 1-D ``uint8`` arrays of 0/1; bipolar vectors are ``int8``
arrays of +1/-1. Hamming distance packs bits into 64-bit words.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch


def as_bits(x) -> np.ndarray:
    arr = np.asarray(x)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"expected a non-empty 1-D bit string, got shape {arr.shape}")
    if not np.isin(arr, (0, 1)).all():
        raise ValueError("bit string entries must be 0 or 1")
    return arr.astype(np.uint8, copy=False)


def as_bipolar(u) -> np.ndarray:
    arr = np.asarray(u)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"expected a non-empty 1-D bipolar vector, got shape {arr.shape}")
    if not np.isin(arr, (1, -1)).all():
        raise ValueError("bipolar entries must be +1 or -1")
    return arr.astype(np.int8, copy=False)


def _rows(rows, convert) -> np.ndarray:
    rows = [convert(r) for r in rows]
    if not rows:
        raise ValueError("need at least one row")
    n = rows[0].size
    if any(r.size != n for r in rows):
        raise DimensionMismatch("rows have different lengths")
    return np.stack(rows)


def random_bits(n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, 2, size=n, dtype=np.uint8)


def xor_bind(x, y) -> np.ndarray:
    x, y = as_bits(x), as_bits(y)
    if x.size != y.size:
        raise DimensionMismatch(f"bit string lengths differ: {x.size} vs {y.size}")
    return x ^ y


def majority_bundle(rows) -> np.ndarray:
    """Per-column ``Theta(mean - 1/2)`` with ``Theta(0) = 1``, so ties give 1."""
    m = _rows(rows, as_bits)
    ones = m.sum(axis=0, dtype=np.int64)
    return (2 * ones >= m.shape[0]).astype(np.uint8)


def pack_words(x) -> np.ndarray:
    """Pack bits into little-endian ``uint64`` words (zero padded)."""
    x = np.asarray(x, dtype=np.uint8)
    packed = np.packbits(x, axis=-1, bitorder="little")
    pad = (-packed.shape[-1]) % 8
    if pad:
        widths = [(0, 0)] * (packed.ndim - 1) + [(0, pad)]
        packed = np.pad(packed, widths)
    return np.ascontiguousarray(packed).view(np.uint64)


def popcount(words: np.ndarray) -> np.ndarray:
    return np.bitwise_count(words).sum(axis=-1, dtype=np.int64)


def hamming(x, y) -> int:
    x, y = as_bits(x), as_bits(y)
    if x.size != y.size:
        raise DimensionMismatch(f"bit string lengths differ: {x.size} vs {y.size}")
    return int(popcount(pack_words(x) ^ pack_words(y)))


def exp_map(x) -> np.ndarray:
    """``x_k -> (-1)^x_k``."""
    return (1 - 2 * as_bits(x).astype(np.int8)).astype(np.int8)


def log_map(u) -> np.ndarray:
    return ((1 - as_bipolar(u)) // 2).astype(np.uint8)


def sign_threshold(rows) -> np.ndarray:
    """Componentwise sign of the row sum with ``sign(0) = +1``."""
    m = _rows(rows, as_bipolar)
    total = m.sum(axis=0, dtype=np.int64)
    return np.where(total >= 0, 1, -1).astype(np.int8)


def bits_to_str(x) -> str:
    return "".join("1" if b else "0" for b in as_bits(x))


def str_to_bits(s: str) -> np.ndarray:
    s = s.strip()
    if not s or set(s) - {"0", "1"}:
        raise ValueError(f"not a bit string: {s[:32]!r}")
    return np.frombuffer(s.encode("ascii"), dtype=np.uint8) - ord("0")
