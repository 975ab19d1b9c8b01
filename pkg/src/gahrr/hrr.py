"""Holographic reduced representation algebra on real n-tuples.

Tuples are 1-D float arrays. The transform uses the kernel
``X_k = sum_l x_l exp(-2 pi i k l / n)`` with no forward normalization, so
``dft(I) = (1, ..., 1)`` for the neutral element ``I = (1, 0, ..., 0)``.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import DimensionMismatch, NotInvertible

DEFAULT_EPS = 1e-10
# Direct convolution builds an n x n index table; above this use the transform.
DIRECT_CONV_MAX = 4096


def as_tuple(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"expected a non-empty 1-D tuple, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("tuple has non-finite entries")
    return arr


def _pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x, y = as_tuple(x), as_tuple(y)
    if x.size != y.size:
        raise DimensionMismatch(f"tuple lengths differ: {x.size} vs {y.size}")
    return x, y


def identity(n: int) -> np.ndarray:
    out = np.zeros(n)
    out[0] = 1.0
    return out


@lru_cache(maxsize=8)
def _conv_index(n: int) -> np.ndarray:
    j = np.arange(n)
    return (j[:, None] - j[None, :]) % n


def circ_conv(x, y, method: str = "auto") -> np.ndarray:
    """Circular convolution ``(x * y)_j = sum_k x_k y_{(j-k) mod n}``.

    ``method`` is ``"direct"`` (index sum), ``"fft"`` (via the transform) or
    ``"auto"`` (direct up to :data:`DIRECT_CONV_MAX`).
    """
    x, y = _pair(x, y)
    n = x.size
    if method == "auto":
        method = "direct" if n <= DIRECT_CONV_MAX else "fft"
    if method == "direct":
        return y[_conv_index(n)] @ x
    if method == "fft":
        return idft(dft(x) * dft(y)).real
    raise ValueError(f"unknown convolution method {method!r}")


def involution(x) -> np.ndarray:
    """``(x*)_j = x_{-j mod n}``."""
    x = as_tuple(x)
    return np.roll(x[::-1], 1)


def _is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def dft_direct(x, inverse: bool = False) -> np.ndarray:
    """O(n^2) reference transform (unnormalized in both directions)."""
    x = np.asarray(x, dtype=complex)
    n = x.size
    k = np.arange(n)
    sign = 1.0 if inverse else -1.0
    kernel = np.exp(sign * 2j * np.pi * ((k[:, None] * k[None, :]) % n) / n)
    return kernel @ x


def fft_radix2(x, inverse: bool = False) -> np.ndarray:
    """Iterative decimation-in-time FFT; ``len(x)`` must be a power of two."""
    a = np.asarray(x, dtype=complex)
    n = a.size
    if not _is_pow2(n):
        raise ValueError(f"radix-2 FFT needs a power-of-two length, got {n}")
    levels = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(levels):
        rev |= ((idx >> b) & 1) << (levels - 1 - b)
    a = a[rev]
    sign = 1.0 if inverse else -1.0
    size = 2
    while size <= n:
        half = size // 2
        tw = np.exp(sign * 2j * np.pi * np.arange(half) / size)
        blocks = a.reshape(-1, size)
        even = blocks[:, :half]
        odd = blocks[:, half:] * tw
        a = np.concatenate([even + odd, even - odd], axis=1).reshape(n)
        size *= 2
    return a


def _transform(x, inverse: bool, method: str) -> np.ndarray:
    n = np.asarray(x).size
    if method == "auto":
        method = "fft" if _is_pow2(n) else "direct"
    if method == "fft":
        return fft_radix2(x, inverse)
    if method == "direct":
        return dft_direct(x, inverse)
    raise ValueError(f"unknown transform method {method!r}")


def dft(x, method: str = "auto") -> np.ndarray:
    x = np.asarray(x)
    if x.ndim != 1 or x.size == 0:
        raise ValueError(f"expected a non-empty 1-D tuple, got shape {x.shape}")
    return _transform(x, False, method)


def idft(X, method: str = "auto") -> np.ndarray:
    X = np.asarray(X, dtype=complex)
    if X.ndim != 1 or X.size == 0:
        raise ValueError(f"expected a non-empty 1-D tuple, got shape {X.shape}")
    return _transform(X, True, method) / X.size


def exact_inverse(x, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Tuple ``y`` with ``y * x = I``, built as ``1 / dft(x)`` componentwise.

    Raises :class:`NotInvertible` (with the weakest component index) when
    some Fourier magnitude is not above ``eps``.
    """
    x = as_tuple(x)
    X = dft(x)
    mags = np.abs(X)
    k = int(np.argmin(mags))
    if mags[k] <= eps:
        raise NotInvertible(
            f"Fourier component {k} has magnitude {mags[k]:.3g} <= eps={eps:g}", index=k
        )
    inv = idft(1.0 / X)
    if np.max(np.abs(inv.imag)) >= 1e-10:
        raise ArithmeticError("inverse has a non-negligible imaginary part")
    return inv.real


def approx_unbind(role, trace) -> np.ndarray:
    """Decode with the involution of ``role`` (exact when ``role`` is unitary)."""
    role, trace = _pair(role, trace)
    return circ_conv(involution(role), trace)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Real tuple whose Fourier components all have magnitude 1."""
    if n < 1:
        raise ValueError("n must be positive")
    phases = rng.uniform(-np.pi, np.pi, size=n)
    X = np.exp(1j * phases)
    # conjugate symmetry X_{n-k} = conj(X_k) makes the tuple real
    X[0] = 1.0 if rng.random() < 0.5 else -1.0
    if n % 2 == 0:
        X[n // 2] = 1.0 if rng.random() < 0.5 else -1.0
    upper = np.arange(1, (n + 1) // 2)
    X[n - upper] = np.conj(X[upper])
    return idft(X).real


def random_vector(n: int, rng: np.random.Generator) -> np.ndarray:
    """I.i.d. normal entries with variance ``1/n``."""
    return rng.normal(0.0, 1.0 / np.sqrt(n), size=n)


def cosine(x, y) -> float:
    x, y = _pair(x, y)
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    if nx == 0.0 or ny == 0.0:
        raise ValueError("cosine is undefined for a zero vector")
    return float(np.clip(x @ y / (nx * ny), -1.0, 1.0))
