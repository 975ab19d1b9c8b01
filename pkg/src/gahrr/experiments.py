"""Seeded experiments: record capacity, basis dependence and the Pat Smith demo."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import ga, hrr
from .errors import NoMatch
from .vsa import (
    Backend,
    CleanupMemory,
    Record,
    cleanup,
    encode_record,
    filler_subspace_project,
    gen_vocabulary,
    patsmith_record,
    patsmith_vocabulary,
    similarities,
    unbind,
)

CSV_HEADER = ("backend", "n", "N", "trials", "accuracy", "margin", "seed")


def trial_seed(seed: int, trial: int) -> np.random.SeedSequence:
    """Per-trial stream; adding trials never changes earlier ones."""
    return np.random.SeedSequence(seed, spawn_key=(trial,))


def _fmt(x: float) -> str:
    return f"{x:.6g}"


@dataclass(frozen=True)
class ExperimentRow:
    backend: str
    n: int
    N: int
    trials: int
    accuracy: float
    margin: float
    seed: int
    # GA only: fraction of trials where every noise term leaves the filler
    # subspace, and the accuracy restricted to those trials.
    subspace_exit_rate: float | None = None
    accuracy_given_exit: float | None = None

    def csv_fields(self) -> list[str]:
        return [self.backend, str(self.n), str(self.N), str(self.trials),
                _fmt(self.accuracy), _fmt(self.margin), str(self.seed)]

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class _Outcome:
    success: bool
    margin: float
    exited: bool | None


def _decode_scores(noisy, mem: CleanupMemory, backend: Backend) -> np.ndarray:
    """Clean-up scores normalized so that 1 means identical."""
    try:
        sims = similarities(noisy, mem)
    except NoMatch:
        return np.zeros(len(mem.names))
    if backend.kind == "ga":
        return np.abs(sims)
    if backend.kind == "bsc":
        return 1.0 + 2.0 * sims / backend.n
    return sims


def run_trial(backend: Backend, pairs: int, memory_size: int, seed: int, trial: int) -> _Outcome:
    roles = [f"role{i}" for i in range(pairs)]
    fillers = [f"filler{i}" for i in range(memory_size)]
    voc = gen_vocabulary(roles, fillers, backend, trial_seed(seed, trial))
    rec = Record.of(zip(roles, fillers))
    trace = encode_record(rec, voc)
    mem = CleanupMemory.from_vocabulary(voc)

    success = True
    margins = []
    for i, role in enumerate(roles):
        noisy = unbind(trace, role, voc)
        if backend.kind == "ga":
            noisy = filler_subspace_project(noisy, backend.k)
        scores = _decode_scores(noisy, mem, backend)
        others = np.delete(scores, i)
        margins.append(scores[i] - (others.max() if others.size else 0.0))
        try:
            success &= cleanup(noisy, mem).name == fillers[i]
        except NoMatch:
            success = False

    exited = None
    if backend.kind == "ga":
        rmask = [next(iter(voc.role(r).terms)) for r in roles]
        fmask = [next(iter(voc.filler(f).terms)) for f in fillers[:pairs]]
        exited = all(
            (rmask[i] ^ rmask[j] ^ fmask[j]) >> backend.k
            for i in range(pairs) for j in range(pairs) if i != j
        )
    return _Outcome(bool(success), float(np.mean(margins)) if margins else 0.0, exited)


def _run_trial_args(args):
    return run_trial(*args)


def run_capacity(
    backend: Backend,
    pairs: int,
    trials: int,
    seed: int = 0,
    memory_size: int = 100,
    jobs: int = 1,
) -> ExperimentRow:
    """Encode ``trials`` random records of ``pairs`` pairs and decode every role.

    A trial succeeds when all roles clean up to their own filler. GA
    decoding projects onto the filler subspace before clean-up.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if pairs < 1 or memory_size < pairs:
        raise ValueError(f"need 1 <= N <= memory size, got N={pairs}, memory={memory_size}")
    args = [(backend, pairs, memory_size, seed, t) for t in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_trial_args, args, chunksize=max(1, trials // (4 * jobs))))
    else:
        outcomes = [run_trial(*a) for a in args]

    wins = sum(o.success for o in outcomes)
    exit_rate = given_exit = None
    if backend.kind == "ga":
        exited = [o for o in outcomes if o.exited]
        exit_rate = len(exited) / trials
        given_exit = sum(o.success for o in exited) / len(exited) if exited else float("nan")
    return ExperimentRow(
        backend.kind, backend.n, pairs, trials, wins / trials,
        float(np.mean([o.margin for o in outcomes])), seed, exit_rate, given_exit,
    )


# -- basis dependence -------------------------------------------------------

def rotate(v) -> np.ndarray:
    """Components in the basis rotated by pi/2: ``(v0, v1) -> (v1, -v0)``."""
    return np.array([v[1], -v[0]], dtype=float)


# primed basis vectors written in the unprimed basis: b0' = b1, b1' = -b0
_PRIMED = (ga.Multivector.vector([0.0, 1.0]), ga.Multivector.vector([-1.0, 0.0]))


def from_primed(a: ga.Multivector) -> ga.Multivector:
    """Re-express a 2D multivector given in the rotated basis."""
    out = ga.Multivector(2)
    for mask, coeff in a.terms.items():
        term = ga.Multivector.scalar(coeff, 2)
        for i in range(2):
            if mask >> i & 1:
                term = ga.gp(term, _PRIMED[i])
        out = out + term
    return out


def basis_check(x, y) -> tuple[float, float]:
    """Return (convolution disagreement, geometric-product disagreement).

    The convolution of rotated components is compared with the rotated
    convolution; the geometric product of rotated components, mapped back,
    is compared with the unrotated product.
    """
    x, y = np.asarray(x, float), np.asarray(y, float)
    conv_gap = float(np.max(np.abs(hrr.circ_conv(rotate(x), rotate(y)) - rotate(hrr.circ_conv(x, y)))))
    direct = ga.gp(ga.Multivector.vector(x), ga.Multivector.vector(y))
    primed = from_primed(ga.gp(ga.Multivector.vector(rotate(x)), ga.Multivector.vector(rotate(y))))
    keys = set(direct.terms) | set(primed.terms)
    gp_gap = max((abs(direct[k] - primed[k]) for k in keys), default=0.0)
    return conv_gap, gp_gap


@dataclass(frozen=True)
class BasisReport:
    pairs: int
    differing: int
    min_conv_gap: float
    max_gp_gap: float
    resampled: int
    conv_margin: float = 1e-6
    gp_tol: float = 1e-12

    @property
    def ok(self) -> bool:
        return self.differing >= math.ceil(0.999 * self.pairs) and self.max_gp_gap <= self.gp_tol


def run_basis(pairs: int = 1000, seed: int = 0) -> BasisReport:
    rng = np.random.default_rng(seed)
    differing = resampled = 0
    min_gap, max_gp = math.inf, 0.0
    done = 0
    while done < pairs:
        x, y = rng.normal(size=2), rng.normal(size=2)
        if not x.any() or not y.any():
            resampled += 1
            continue
        conv_gap, gp_gap = basis_check(x, y)
        differing += conv_gap > 1e-6
        min_gap = min(min_gap, conv_gap)
        max_gp = max(max_gp, gp_gap)
        done += 1
    return BasisReport(pairs, differing, min_gap, max_gp, resampled)


# -- Pat Smith demo ---------------------------------------------------------

@dataclass
class Demo:
    lines: list[str] = field(default_factory=list)
    recovered: dict[str, str | None] = field(default_factory=dict)
    expected: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.recovered.get(r) == f for r, f in self.expected.items())

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _coef(c: float) -> str:
    return "0" if c == 0 else f"{c:+.6g}"


def _terms(a: ga.Multivector, masks=None) -> str:
    masks = sorted(a.terms) if masks is None else masks
    if not masks:
        return "{}"
    return "{" + ", ".join(f"{ga.mask_to_str(m, a.dim)}: {_coef(a[m])}" for m in masks) + "}"


def demo_patsmith_fixture(alpha: float = 1.0, beta: float = 2.0, gamma: float = 1.0) -> Demo:
    """The four-bit worked example with blades fixed by hand."""
    voc = patsmith_vocabulary()
    rec = patsmith_record(alpha, beta, gamma)
    k = voc.backend.k
    demo = Demo(expected={p.role: p.filler for p in rec.pairs})
    out = demo.lines
    out.append(f"backend ga (fixed blades) n={voc.backend.n} k={k}")
    out.append(f"weights alpha={alpha:g} beta={beta:g} gamma={gamma:g}")
    for name, item in [*voc.roles.items(), *voc.fillers.items()]:
        out.append(f"item {name} = c{ga.mask_to_str(next(iter(item.terms)), 4)}")
    bound_masks: list[int] = []
    for p in rec.pairs:
        b = ga.gp(voc.role(p.role), voc.filler(p.filler))
        (mask,) = b.terms
        bound_masks.append(mask)
        out.append(f"bind {p.role}*{p.filler} = {_coef(b[mask])} c{ga.mask_to_str(mask, 4)}")
    trace = encode_record(rec, voc).value
    masks = sorted(set(bound_masks))
    out.append(f"trace {_terms(trace, masks)}")
    mem = CleanupMemory.from_vocabulary(voc)
    for p in rec.pairs:
        noisy = unbind(trace, p.role, voc)
        projected = filler_subspace_project(noisy, k)
        out.append(f"unbind {p.role}: {_terms(noisy)}")
        out.append(f"  project k={k}: {_terms(projected)}")
        try:
            res = cleanup(projected, mem)
        except NoMatch:
            demo.recovered[p.role] = None
            out.append("  cleanup: no match")
            continue
        demo.recovered[p.role] = res.name
        sign = "+" if res.sign > 0 else "-"
        out.append(f"  cleanup: {res.name} ({sign}) score={res.score:.6g}")
    hits = sum(demo.recovered.get(r) == f for r, f in demo.expected.items())
    out.append(f"recovered {hits}/{len(demo.expected)}")
    return demo


def demo_patsmith(backend: Backend, seed: int = 0, memory_size: int = 100) -> Demo:
    """Pat Smith record over a seeded random vocabulary."""
    roles = ["name", "sex", "age"]
    fillers = ["Pat", "male", "66"] + [f"filler{i}" for i in range(3, memory_size)]
    voc = gen_vocabulary(roles, fillers, backend, seed)
    rec = Record.of(zip(roles, fillers))
    trace = encode_record(rec, voc).value
    mem = CleanupMemory.from_vocabulary(voc)
    demo = Demo(expected=dict(zip(roles, fillers)))
    out = demo.lines
    header = f"backend {backend.kind} n={backend.n}"
    if backend.kind == "ga":
        header += f" k={backend.k}"
    out.append(f"{header} seed={seed} memory={len(mem.names)}")
    if backend.kind == "ga":
        out.append(f"trace {len(trace)} terms, norm={ga.coeff_norm(trace):.6g}")
    elif backend.kind == "hrr":
        out.append(f"trace norm={np.linalg.norm(trace):.6g}")
    else:
        out.append(f"trace ones={int(trace.sum())}")
    for role in roles:
        noisy = unbind(trace, role, voc)
        if backend.kind == "ga":
            noisy = filler_subspace_project(noisy, backend.k)
        try:
            res = cleanup(noisy, mem)
        except NoMatch:
            demo.recovered[role] = None
            out.append(f"unbind {role}: no match")
            continue
        demo.recovered[role] = res.name
        if backend.kind == "bsc":
            out.append(f"unbind {role}: {res.name} hamming={-int(res.score)}")
        else:
            sign = "+" if res.sign > 0 else "-"
            out.append(f"unbind {role}: {res.name} ({sign}) score={res.score:.6g}")
    hits = sum(demo.recovered.get(r) == f for r, f in demo.expected.items())
    out.append(f"recovered {hits}/{len(roles)}")
    return demo
