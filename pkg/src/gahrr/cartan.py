"""Complex matrix representations of the blade algebra.

Used as an independent oracle for :mod:`gahrr.ga`. The Cartan family on
``m`` tensor factors realizes ``2m`` anticommuting generators:

    b_{2k}   = s1 x ... x s1 (m-k times) x s2 x 1 x ... x 1 (k-1 times)
    b_{2k-1} = s1 x ... x s1 (m-k times) x s3 x 1 x ... x 1 (k-1 times)

The ``"pauli"`` family is the single-factor representation ``b_j = s_j``
for up to three generators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import ga

MAX_FACTORS = 7
DEFAULT_SAMPLE = 4096
# complex entries kept in the oracle's blade cache (~64 MiB)
_CACHE_ENTRIES = 1 << 22

_PAULI = {
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
}
_I2 = np.eye(2, dtype=complex)


def pauli(i: int) -> np.ndarray:
    if i not in _PAULI:
        raise ValueError(f"Pauli index must be 1, 2 or 3, got {i!r}")
    return _PAULI[i].copy()


def kron(ms) -> np.ndarray:
    """Left-to-right Kronecker product ``ms[0] x ms[1] x ...``."""
    ms = list(ms)
    if not ms:
        raise ValueError("kron needs at least one matrix")
    return reduce(np.kron, ms)


@dataclass(frozen=True)
class CartanConfig:
    """``m`` tensor factors carrying ``n`` generators."""

    n: int
    m: int
    family: str = "cartan"

    def __post_init__(self):
        if self.family == "cartan":
            if not 1 <= self.m <= MAX_FACTORS:
                raise ValueError(f"factor count m must be in [1, {MAX_FACTORS}], got {self.m}")
            if not 1 <= self.n <= 2 * self.m:
                raise ValueError(f"n={self.n} needs 1 <= n <= 2m = {2 * self.m}")
        elif self.family == "pauli":
            if self.m != 1 or not 1 <= self.n <= 3:
                raise ValueError("pauli family needs m=1 and 1 <= n <= 3")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @classmethod
    def minimal(cls, n: int) -> "CartanConfig":
        return cls(n, max(1, math.ceil(n / 2)))

    @property
    def side(self) -> int:
        return 2 ** self.m

    @property
    def max_generators(self) -> int:
        return 3 if self.family == "pauli" else 2 * self.m


def generator(j: int, cfg: CartanConfig) -> np.ndarray:
    if not 1 <= j <= cfg.max_generators:
        raise ValueError(f"generator index {j} out of range 1..{cfg.max_generators}")
    if cfg.family == "pauli":
        return pauli(j)
    k = (j + 1) // 2
    middle = pauli(2) if j % 2 == 0 else pauli(3)
    factors = [pauli(1)] * (cfg.m - k) + [middle] + [_I2] * (k - 1)
    return kron(factors)


def _mask_of(x) -> int:
    return x.mask if isinstance(x, ga.Blade) else int(x)


def rep_blade(x, cfg: CartanConfig) -> np.ndarray:
    """Ordered product of generators over the set bits of ``x`` (ascending).

    A :class:`~gahrr.ga.Blade` argument contributes its sign.
    """
    mask = _mask_of(x)
    if mask >> cfg.n:
        raise ValueError(f"mask {mask:#x} exceeds the {cfg.n} configured generators")
    out = np.eye(cfg.side, dtype=complex)
    j = 1
    while mask:
        if mask & 1:
            out = out @ generator(j, cfg)
        mask >>= 1
        j += 1
    if isinstance(x, ga.Blade):
        out = x.sign * out
    return out


def rep_mv(a: ga.Multivector, cfg: CartanConfig) -> np.ndarray:
    if a.dim > cfg.n:
        raise ValueError(f"multivector dimension {a.dim} exceeds {cfg.n} configured generators")
    out = np.zeros((cfg.side, cfg.side), dtype=complex)
    for mask, coeff in a.terms.items():
        out += coeff * rep_blade(mask, cfg)
    return out


@dataclass(frozen=True)
class OracleReport:
    n: int
    m: int
    pairs: int
    passed: int
    failed: int
    worst_deviation: float
    exhaustive: bool

    @property
    def ok(self) -> bool:
        return self.failed == 0


def oracle_verify(
    n: int,
    cfg: CartanConfig | None = None,
    sample: int | None = None,
    seed: int = 0,
    tol: float = 1e-12,
) -> OracleReport:
    """Check ``rep(c_x) rep(c_y) == sign * rep(c_{x^y})`` for mask pairs.

    All ``4^n`` pairs are checked when that is at most ``2^24`` and
    ``sample`` is not given; otherwise ``sample`` random pairs (default
    4096) are drawn with ``seed``.
    """
    cfg = cfg or CartanConfig.minimal(n)
    if n > cfg.n:
        raise ValueError(f"n={n} exceeds the configuration's {cfg.n} generators")
    size = 1 << n
    exhaustive = sample is None and size * size <= 1 << 24
    cache: dict[int, np.ndarray] = {}
    cache_cap = max(1, _CACHE_ENTRIES // (cfg.side * cfg.side))

    def rep(mask: int) -> np.ndarray:
        hit = cache.get(mask)
        if hit is None:
            hit = rep_blade(mask, cfg)
            if len(cache) < cache_cap:
                cache[mask] = hit
        return hit

    if exhaustive:
        pairs = ((x, y) for x in range(size) for y in range(size))
        total = size * size
    else:
        count = sample if sample is not None else DEFAULT_SAMPLE
        rng = np.random.default_rng(seed)
        xs = rng.integers(0, size, size=count, dtype=np.uint64)
        ys = rng.integers(0, size, size=count, dtype=np.uint64)
        pairs = zip(map(int, xs), map(int, ys))
        total = count

    passed = failed = 0
    worst = 0.0
    for x, y in pairs:
        prod = ga.blade_mul(ga.Blade(x, n), ga.Blade(y, n))
        dev = float(np.max(np.abs(rep(x) @ rep(y) - prod.sign * rep(prod.mask))))
        worst = max(worst, dev)
        if dev <= tol:
            passed += 1
        else:
            failed += 1
    return OracleReport(n, cfg.m, total, passed, failed, worst, exhaustive)
