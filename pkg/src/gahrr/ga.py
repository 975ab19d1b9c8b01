"""Euclidean geometric algebra on bitmask blades.

A blade ``c_{x1...xn} = b1^x1 ... bn^xn`` is stored as an integer mask with
bit ``i`` set iff ``b_{i+1}`` is present. Text forms always write ``x1``
first, so ``"1100"`` is ``b1 b2`` (mask ``0b0011``).

Multivectors are sparse ``{mask: coefficient}`` maps. Every arithmetic
result drops coefficients whose magnitude is below :data:`PRUNE_TOL`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import DimensionMismatch, NotInvertible

MAX_DIM = 64
PRUNE_TOL = 1e-14

# _HIGHER[i] selects bit positions strictly above i.
_HIGHER = tuple(((1 << MAX_DIM) - 1) & ~((1 << (i + 1)) - 1) for i in range(MAX_DIM))


def _check_dim(dim: int) -> None:
    if not (isinstance(dim, int) and 1 <= dim <= MAX_DIM):
        raise ValueError(f"dimension must be an int in [1, {MAX_DIM}], got {dim!r}")


def _check_mask(mask: int, dim: int) -> None:
    if mask < 0 or mask >> dim:
        raise ValueError(f"mask {mask:#x} has bits outside dimension {dim}")


def reorder_sign(x: int, y: int) -> int:
    """Sign of ``c_x c_y`` relative to ``c_{x^y}``.

    Computes ``D = sum_{k<l} y_k x_l`` by counting, for each set bit of ``y``,
    the set bits of ``x`` above it.
    """
    d = 0
    while y:
        low = y & -y
        d += (x & _HIGHER[low.bit_length() - 1]).bit_count()
        y ^= low
    return -1 if d & 1 else 1


def mask_to_str(mask: int, dim: int) -> str:
    return "".join("1" if (mask >> i) & 1 else "0" for i in range(dim))


def str_to_mask(bits: str) -> tuple[int, int]:
    """Parse ``"x1x2...xn"`` into ``(mask, n)``."""
    bits = bits.strip()
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError(f"not a bit string: {bits!r}")
    mask = 0
    for i, ch in enumerate(bits):
        if ch == "1":
            mask |= 1 << i
    return mask, len(bits)


@dataclass(frozen=True)
class Blade:
    """A signed basis blade ``sign * c_mask`` in ``dim`` dimensions."""

    mask: int
    dim: int
    sign: int = 1

    def __post_init__(self):
        _check_dim(self.dim)
        _check_mask(self.mask, self.dim)
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")

    @classmethod
    def parse(cls, bits: str, sign: int = 1) -> "Blade":
        mask, dim = str_to_mask(bits)
        return cls(mask, dim, sign)

    @property
    def grade(self) -> int:
        return self.mask.bit_count()

    def bits(self) -> str:
        return mask_to_str(self.mask, self.dim)

    def __neg__(self) -> "Blade":
        return Blade(self.mask, self.dim, -self.sign)

    def __str__(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}c{self.bits()}"

    def to_multivector(self) -> "Multivector":
        return Multivector(self.dim, {self.mask: float(self.sign)})


def blade_mul(x: Blade, y: Blade) -> Blade:
    """Geometric product of two blades: ``c_x c_y = (-1)^D c_{x XOR y}``."""
    if x.dim != y.dim:
        raise DimensionMismatch(f"blade dimensions differ: {x.dim} vs {y.dim}")
    return Blade(x.mask ^ y.mask, x.dim, x.sign * y.sign * reorder_sign(x.mask, y.mask))


def blade_square_sign(x: Blade | int) -> int:
    """Sign of ``c_x c_x``; equals ``(-1)^(r(r-1)/2)`` for grade ``r``."""
    mask = x.mask if isinstance(x, Blade) else x
    return reorder_sign(mask, mask)


def blade_inverse(x: Blade) -> Blade:
    # (s c)^-1 = s c^-1 and c^-1 = (c c) c for a blade whose square is +-1
    return Blade(x.mask, x.dim, x.sign * blade_square_sign(x))


def _pruned(terms: Mapping[int, float]) -> dict[int, float]:
    return {m: c for m, c in sorted(terms.items()) if abs(c) >= PRUNE_TOL}


@dataclass(frozen=True)
class Multivector:
    """Sparse real combination of blades in ``dim`` dimensions.

    Instances are treated as immutable; arithmetic returns new objects.
    """

    dim: int
    terms: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self):
        _check_dim(self.dim)
        clean = {}
        for mask, coeff in self.terms.items():
            _check_mask(int(mask), self.dim)
            c = float(coeff)
            if not math.isfinite(c):
                raise ValueError(f"non-finite coefficient on mask {mask:#x}")
            clean[int(mask)] = c
        object.__setattr__(self, "terms", _pruned(clean))

    # construction helpers
    @classmethod
    def scalar(cls, value: float, dim: int) -> "Multivector":
        return cls(dim, {0: value})

    @classmethod
    def blade(cls, mask: int | str, dim: int | None = None, coeff: float = 1.0) -> "Multivector":
        if isinstance(mask, str):
            mask, parsed = str_to_mask(mask)
            dim = parsed if dim is None else dim
        if dim is None:
            raise ValueError("dim is required for integer masks")
        return cls(dim, {mask: coeff})

    @classmethod
    def vector(cls, coords: Iterable[float]) -> "Multivector":
        coords = [float(c) for c in coords]
        return cls(len(coords), {1 << i: c for i, c in enumerate(coords)})

    @classmethod
    def from_strings(cls, terms: Mapping[str, float]) -> "Multivector":
        if not terms:
            raise ValueError("cannot infer dimension from an empty term map")
        dims = set()
        parsed = {}
        for bits, coeff in terms.items():
            mask, dim = str_to_mask(bits)
            dims.add(dim)
            parsed[mask] = parsed.get(mask, 0.0) + float(coeff)
        if len(dims) != 1:
            raise DimensionMismatch(f"bit strings of mixed length: {sorted(dims)}")
        return cls(dims.pop(), parsed)

    # queries
    def __getitem__(self, mask: int | str) -> float:
        if isinstance(mask, str):
            mask, dim = str_to_mask(mask)
            if dim != self.dim:
                raise DimensionMismatch(f"bit string length {dim} != {self.dim}")
        return self.terms.get(mask, 0.0)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def grades(self) -> set[int]:
        return {m.bit_count() for m in self.terms}

    def is_vector(self) -> bool:
        return all(m.bit_count() == 1 for m in self.terms)

    def as_dict(self) -> dict[str, float]:
        return {mask_to_str(m, self.dim): c for m, c in self.terms.items()}

    def isclose(self, other: "Multivector", tol: float = 1e-12) -> bool:
        if self.dim != other.dim:
            return False
        keys = set(self.terms) | set(other.terms)
        return all(abs(self[k] - other[k]) <= tol for k in keys)

    # arithmetic
    def _same_dim(self, other: "Multivector") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"multivector dimensions differ: {self.dim} vs {other.dim}")

    def __add__(self, other: "Multivector") -> "Multivector":
        if not isinstance(other, Multivector):
            return NotImplemented
        self._same_dim(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0.0) + c
        return Multivector(self.dim, out)

    def __neg__(self) -> "Multivector":
        return Multivector(self.dim, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Multivector") -> "Multivector":
        if not isinstance(other, Multivector):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return gp(self, other)
        if isinstance(other, (int, float)):
            return Multivector(self.dim, {m: c * other for m, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def __truediv__(self, other: float) -> "Multivector":
        return self * (1.0 / other)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " ".join(f"{c:+.6g} c{mask_to_str(m, self.dim)}" for m, c in self.terms.items())


def gp(a: Multivector, b: Multivector) -> Multivector:
    """Geometric product, the bilinear extension of :func:`blade_mul`."""
    a._same_dim(b)
    out: dict[int, float] = {}
    for p, ca in a.terms.items():
        for q, cb in b.terms.items():
            m = p ^ q
            out[m] = out.get(m, 0.0) + reorder_sign(p, q) * ca * cb
    return Multivector(a.dim, out)


def _require_vector(x: Multivector) -> None:
    if not x.is_vector():
        raise ValueError(f"expected a grade-1 multivector, got grades {sorted(x.grades())}")


def inner_outer(x: Multivector, y: Multivector) -> tuple[float, Multivector]:
    """Split ``xy`` into the inner product (scalar) and the outer product (bivector)."""
    _require_vector(x)
    _require_vector(y)
    xy, yx = gp(x, y), gp(y, x)
    inner = 0.5 * (xy + yx)
    outer = 0.5 * (xy - yx)
    return inner[0], outer


def vector_inverse(x: Multivector) -> Multivector:
    _require_vector(x)
    sq = sum(c * c for c in x.terms.values())
    if sq == 0.0:
        raise NotInvertible("zero-magnitude vector has no inverse")
    return x / sq


def grade_project(a: Multivector, r: int) -> Multivector:
    if not 0 <= r <= a.dim:
        raise ValueError(f"grade {r} out of range for dimension {a.dim}")
    return Multivector(a.dim, {m: c for m, c in a.terms.items() if m.bit_count() == r})


def coeff_norm(a: Multivector) -> float:
    return math.sqrt(sum(c * c for c in a.terms.values()))


def coeff_dot(a: Multivector, b: Multivector) -> float:
    a._same_dim(b)
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    return sum(c * big.terms.get(m, 0.0) for m, c in small.terms.items())
