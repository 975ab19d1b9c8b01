"""Role-filler records over the GA, HRR and BSC backends.

One interface covers all three binding algebras:

=======  ========================  ===================  ====================
backend  item                      bind / bundle        clean-up similarity
=======  ========================  ===================  ====================
ga       unit blade (Multivector)  geometric product,   abs coefficient
                                   weighted sum         cosine
hrr      real tuple (ndarray)      circular conv,       cosine
                                   weighted sum
bsc      bit string (ndarray)      XOR, majority        negated Hamming
=======  ========================  ===================  ====================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from . import bsc, ga, hrr
from .errors import BackendMismatch, CapacityError, NoMatch

BACKENDS = ("ga", "hrr", "bsc")
DEFAULT_N = {"ga": 64, "hrr": 1024, "bsc": 10_000}
DEFAULT_K = 16
MAX_RESAMPLE = 100


@dataclass(frozen=True)
class Backend:
    kind: str
    n: int
    k: int | None = None
    eps: float = hrr.DEFAULT_EPS

    def __post_init__(self):
        if self.kind not in BACKENDS:
            raise ValueError(f"backend must be one of {BACKENDS}, got {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.kind == "ga":
            if self.n > ga.MAX_DIM:
                raise ValueError(f"GA dimension is capped at {ga.MAX_DIM}")
            if self.k is None:
                object.__setattr__(self, "k", min(DEFAULT_K, self.n))
            if not 0 <= self.k <= self.n:
                raise ValueError(f"filler prefix k={self.k} must lie in [0, n={self.n}]")

    @classmethod
    def default(cls, kind: str, n: int | None = None, k: int | None = None,
                eps: float = hrr.DEFAULT_EPS) -> "Backend":
        return cls(kind, DEFAULT_N[kind] if n is None else n, k, eps)


def _item_key(kind: str, item):
    if kind == "ga":
        return tuple(item.terms)
    arr = np.asarray(item, dtype=float if kind == "hrr" else np.uint8)
    return arr.tobytes()


def _check_item(backend: Backend, item, name: str) -> None:
    if backend.kind == "ga":
        if not isinstance(item, ga.Multivector) or item.dim != backend.n:
            raise BackendMismatch(f"item {name!r} is not a {backend.n}-dimensional multivector")
        if len(item) != 1:
            raise ValueError(f"GA item {name!r} must be a single blade")
    else:
        arr = np.asarray(item)
        if arr.ndim != 1 or arr.size != backend.n:
            raise BackendMismatch(f"item {name!r} does not have length {backend.n}")


@dataclass(frozen=True)
class Vocabulary:
    """Named role and filler items for one backend."""

    backend: Backend
    roles: Mapping[str, Any]
    fillers: Mapping[str, Any]
    seed: int | None = None

    def __post_init__(self):
        clash = set(self.roles) & set(self.fillers)
        if clash:
            raise ValueError(f"names used as both role and filler: {sorted(clash)}")
        items = []
        for name, item in [*self.roles.items(), *self.fillers.items()]:
            _check_item(self.backend, item, name)
            items.append((name, item))
        if self.backend.kind == "ga":
            limit = self.backend.k
            for name, item in self.fillers.items():
                (mask,) = item.terms
                if mask >> limit:
                    raise ValueError(f"GA filler {name!r} has bits beyond position k={limit}")
        seen: dict = {}
        for name, item in items:
            key = _item_key(self.backend.kind, item)
            if key in seen:
                raise ValueError(f"items {seen[key]!r} and {name!r} coincide")
            seen[key] = name

    def role(self, name: str):
        try:
            return self.roles[name]
        except KeyError:
            raise KeyError(f"unknown role {name!r}") from None

    def filler(self, name: str):
        try:
            return self.fillers[name]
        except KeyError:
            raise KeyError(f"unknown filler {name!r}") from None


def gen_vocabulary(
    role_names: Sequence[str],
    filler_names: Sequence[str],
    backend: Backend,
    seed: int | np.random.SeedSequence | None = None,
) -> Vocabulary:
    """Draw a random vocabulary; identical seeds give identical vocabularies.

    GA roles are uniform over all ``n``-bit masks and GA fillers over the
    masks confined to the first ``k`` bits. HRR roles are random unitary
    tuples and HRR fillers Gaussian. BSC items are fair coin flips.
    """
    names = [*role_names, *filler_names]
    if len(set(names)) != len(names):
        raise ValueError("role and filler names must be unique")
    if backend.kind == "ga":
        n, k = backend.n, backend.k
        if len(filler_names) > 2 ** k:
            raise CapacityError(f"{len(filler_names)} fillers requested but only {2 ** k} masks have k={k}")
        if len(names) > 2 ** n:
            raise CapacityError(f"{len(names)} items requested but only {2 ** n} blades exist")
    rng = np.random.default_rng(seed)
    seen: set = set()

    def draw(is_role: bool):
        for _ in range(MAX_RESAMPLE):
            item = _draw(backend, rng, is_role)
            key = _item_key(backend.kind, item)
            if key not in seen:
                seen.add(key)
                return item
        raise CapacityError(f"could not draw a distinct item in {MAX_RESAMPLE} attempts")

    roles = {r: draw(True) for r in role_names}
    fillers = {f: draw(False) for f in filler_names}
    plain_seed = seed if isinstance(seed, (int, np.integer)) else None
    return Vocabulary(backend, roles, fillers, plain_seed)


def _draw(backend: Backend, rng: np.random.Generator, is_role: bool):
    n = backend.n
    if backend.kind == "ga":
        bits = n if is_role else backend.k
        mask = int(rng.integers(0, 1 << bits, dtype=np.uint64)) if bits else 0
        return ga.Multivector(n, {mask: 1.0})
    if backend.kind == "hrr":
        return hrr.random_unitary(n, rng) if is_role else hrr.random_vector(n, rng)
    return bsc.random_bits(n, rng)


@dataclass(frozen=True)
class Pair:
    role: str
    filler: str
    weight: float = 1.0


@dataclass(frozen=True)
class Record:
    pairs: tuple[Pair, ...] = ()

    @classmethod
    def of(cls, pairs: Iterable) -> "Record":
        """Build from ``Pair`` objects or ``(role, filler[, weight])`` tuples."""
        return cls(tuple(p if isinstance(p, Pair) else Pair(*p) for p in pairs))


@dataclass(frozen=True)
class Trace:
    kind: str
    value: Any


def _unwrap(x, kind: str):
    if isinstance(x, Trace):
        if x.kind != kind:
            raise BackendMismatch(f"trace is {x.kind}, vocabulary is {kind}")
        return x.value
    return x


def bind(role, filler, kind: str):
    if kind == "ga":
        return ga.gp(role, filler)
    if kind == "hrr":
        return hrr.circ_conv(role, filler)
    return bsc.xor_bind(role, filler)


def encode_record(rec: Record, voc: Vocabulary) -> Trace:
    kind, n = voc.backend.kind, voc.backend.n
    bound = [(bind(voc.role(p.role), voc.filler(p.filler), kind), p.weight) for p in rec.pairs]
    if kind == "bsc":
        if any(w != 1 for _, w in bound):
            raise ValueError("BSC records only support unit weights")
        if not bound:
            return Trace(kind, np.zeros(n, dtype=np.uint8))
        return Trace(kind, bsc.majority_bundle([b for b, _ in bound]))
    if kind == "ga":
        total = ga.Multivector(n)
        for b, w in bound:
            total = total + w * b
        return Trace(kind, total)
    total = np.zeros(n)
    for b, w in bound:
        total = total + w * b
    return Trace(kind, total)


def unbind(trace, role_name: str, voc: Vocabulary, exact: bool = False):
    """Release the filler bound to ``role_name``.

    GA multiplies by the role on the left; ``exact=True`` uses the blade
    inverse instead, which differs by the role's square sign. HRR uses the
    involution, or the exact inverse with ``exact=True``. BSC uses XOR.
    """
    kind = voc.backend.kind
    value = _unwrap(trace, kind)
    role = voc.role(role_name)
    if kind == "ga":
        if exact:
            (mask,) = role.terms
            blade = ga.Blade(mask, role.dim, 1 if role[mask] > 0 else -1)
            inv = ga.blade_inverse(blade).to_multivector() * abs(1.0 / role[mask])
            return ga.gp(inv, value)
        return ga.gp(role, value)
    if kind == "hrr":
        if exact:
            return hrr.circ_conv(hrr.exact_inverse(role, voc.backend.eps), value)
        return hrr.approx_unbind(role, value)
    return bsc.xor_bind(role, value)


def filler_subspace_project(a: ga.Multivector, k: int) -> ga.Multivector:
    """Keep only blades built from ``b_1 ... b_k``."""
    if not 0 <= k <= a.dim:
        raise ValueError(f"k={k} must lie in [0, {a.dim}]")
    return ga.Multivector(a.dim, {m: c for m, c in a.terms.items() if not m >> k})


@dataclass(frozen=True)
class CleanupMemory:
    kind: str
    names: tuple[str, ...]
    items: tuple = field(repr=False)

    def __post_init__(self):
        if not self.names:
            raise ValueError("clean-up memory must not be empty")
        if len(self.names) != len(self.items):
            raise ValueError("names and items differ in length")
        if self.kind == "hrr":
            object.__setattr__(self, "_matrix", np.stack([hrr.as_tuple(x) for x in self.items]))
        elif self.kind == "bsc":
            object.__setattr__(self, "_words", bsc.pack_words(np.stack([bsc.as_bits(x) for x in self.items])))
            object.__setattr__(self, "_n", int(np.asarray(self.items[0]).size))

    @classmethod
    def from_vocabulary(cls, voc: Vocabulary, names: Sequence[str] | None = None) -> "CleanupMemory":
        names = tuple(voc.fillers) if names is None else tuple(names)
        return cls(voc.backend.kind, names, tuple(voc.filler(f) for f in names))

    @property
    def similarity(self) -> str:
        return {"ga": "abs-cosine", "hrr": "cosine", "bsc": "neg-hamming"}[self.kind]


def similarities(noisy, mem: CleanupMemory) -> np.ndarray:
    """Signed similarity of ``noisy`` to every memory item, in memory order.

    GA and HRR give cosines (GA before taking the absolute value); BSC gives
    negated Hamming distances.
    """
    noisy = _unwrap(noisy, mem.kind)
    if mem.kind == "ga":
        norm = ga.coeff_norm(noisy)
        if norm == 0.0:
            raise NoMatch("nothing left to compare: zero multivector")
        return np.array([ga.coeff_dot(noisy, it) / (norm * ga.coeff_norm(it)) for it in mem.items])
    if mem.kind == "hrr":
        v = hrr.as_tuple(noisy)
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise NoMatch("nothing left to compare: zero tuple")
        m = mem._matrix
        return (m @ v) / (np.linalg.norm(m, axis=1) * norm)
    bits = bsc.as_bits(noisy)
    if bits.size != mem._n:
        raise BackendMismatch(f"bit string length {bits.size} != memory length {mem._n}")
    return -bsc.popcount(mem._words ^ bsc.pack_words(bits)).astype(float)


@dataclass(frozen=True)
class CleanupResult:
    name: str
    score: float
    sign: int
    ties: tuple[str, ...] = ()


def cleanup(noisy, mem: CleanupMemory, tie_tol: float = 1e-12) -> CleanupResult:
    """Nearest memory item; ties go to the earliest inserted item.

    ``ties`` lists every item sharing the best score when there is more
    than one. Raises :class:`NoMatch` for a zero GA/HRR input.
    """
    sims = similarities(noisy, mem)
    scores = np.abs(sims) if mem.kind == "ga" else sims
    best = int(np.argmax(scores))
    tied = np.flatnonzero(np.abs(scores - scores[best]) <= tie_tol)
    ties = tuple(mem.names[i] for i in tied) if tied.size > 1 else ()
    # Hamming scores are never positive, so a sign only means something for cosines
    sign = -1 if mem.kind != "bsc" and sims[best] < 0 else 1
    return CleanupResult(mem.names[best], float(scores[best]), sign, ties)


# The worked example: n = 4, fillers confined to the first two bits.
PATSMITH_ROLES = {"name": "1010", "sex": "0111", "age": "1011"}
PATSMITH_FILLERS = {"Pat": "1100", "male": "1000", "66": "0100"}
PATSMITH_PAIRS = (("name", "Pat"), ("sex", "male"), ("age", "66"))


def patsmith_vocabulary() -> Vocabulary:
    def blades(table):
        return {name: ga.Multivector.blade(bits) for name, bits in table.items()}

    return Vocabulary(Backend("ga", 4, 2), blades(PATSMITH_ROLES), blades(PATSMITH_FILLERS))


def patsmith_record(alpha: float = 1.0, beta: float = 1.0, gamma: float = 1.0) -> Record:
    return Record.of((r, f, w) for (r, f), w in zip(PATSMITH_PAIRS, (alpha, beta, gamma)))
