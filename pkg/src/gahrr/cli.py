"""Command-line interface.

Exit codes: 0 success, 1 verification or recovery failure, 2 usage or parse
error, 3 backend or dimension mismatch between inputs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import bsc, cartan, experiments, formats, ga, hrr
from .errors import BackendMismatch, DimensionMismatch, FormatError, NotInvertible
from .vsa import BACKENDS, Backend

SEED_ENV = "GAHRR_SEED"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--backend", help="ga, hrr or bsc (comma list for experiments)")
    g.add_argument("--n", type=_int_list, help="dimension (comma list for experiments)")
    g.add_argument("--k", type=int, help="GA filler prefix length")
    g.add_argument("--seed", type=int, help=f"master seed (default: ${SEED_ENV} or 0)")
    g.add_argument("--eps", type=float, default=hrr.DEFAULT_EPS, help="HRR invertibility threshold")
    g.add_argument("--out", type=Path, help="write output here instead of stdout")
    g.add_argument("--format", choices=("text", "json", "csv"), help="output format")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="gahrr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    demo = sub.add_parser("demo", help="worked examples")
    demo_sub = demo.add_subparsers(dest="demo", required=True)
    ps = demo_sub.add_parser("patsmith", parents=[common], help="encode and decode the Pat Smith record")
    ps.add_argument("--paper-fixture", action="store_true", help="use the fixed 4-bit example blades")
    ps.add_argument("--alpha", type=float, default=1.0)
    ps.add_argument("--beta", type=float, default=2.0)
    ps.add_argument("--gamma", type=float, default=1.0)
    ps.add_argument("--memory", type=int, default=100, help="clean-up memory size")

    exp = sub.add_parser("experiment", help="seeded experiments")
    exp_sub = exp.add_subparsers(dest="experiment", required=True)
    cap = exp_sub.add_parser("capacity", parents=[common], help="decode accuracy over a grid")
    cap.add_argument("--pairs", "--N", dest="pairs", type=_int_list, default=[3], help="pairs per record")
    cap.add_argument("--trials", type=int, default=100)
    cap.add_argument("--memory", type=int, default=100, help="clean-up memory size")
    cap.add_argument("--jobs", type=int, default=1, help="worker processes")
    basis = exp_sub.add_parser("basis", parents=[common], help="rotated-basis convolution vs geometric product")
    basis.add_argument("--trials", type=int, default=1000)

    orc = sub.add_parser("oracle", parents=[common], help="check blade products against matrices")
    orc.add_argument("--m", type=int, help="tensor factors (default ceil(n/2))")
    orc.add_argument("--sample", type=int, help="check this many random pairs instead of all")

    b = sub.add_parser("bind", parents=[common], help="bind two items")
    b.add_argument("inputs", nargs=2, metavar="ITEM", help="JSON file or 0b/0x literal")
    u = sub.add_parser("unbind", parents=[common], help="release the filler bound to a role")
    u.add_argument("role", metavar="ROLE")
    u.add_argument("trace", metavar="TRACE")
    u.add_argument("--exact", action="store_true", help="use exact inverses (GA blade inverse, HRR 1/x)")
    bu = sub.add_parser("bundle", parents=[common], help="superpose items")
    bu.add_argument("inputs", nargs="+", metavar="ITEM")
    bu.add_argument("--weights", type=lambda s: [float(t) for t in s.split(",")], help="GA/HRR weights")
    return parser


def _resolve_seed(args) -> tuple[int, str | None]:
    if args.seed is not None:
        return args.seed, None
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env), SEED_ENV
        except ValueError:
            raise UsageError(f"${SEED_ENV} is not an integer: {env!r}") from None
    return 0, None


def _emit(text: str, args) -> None:
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _single_n(args) -> int | None:
    if args.n is None:
        return None
    if len(args.n) != 1:
        raise UsageError("--n takes a single value for this command")
    return args.n[0]


def _backend(args, default: str) -> Backend:
    kind = args.backend or default
    if kind not in BACKENDS:
        raise UsageError(f"unknown backend {kind!r}")
    return Backend.default(kind, _single_n(args), args.k, args.eps)


def cmd_demo_patsmith(args, seed: int, meta: dict) -> int:
    if args.paper_fixture:
        if (args.backend or "ga") != "ga":
            raise UsageError("--paper-fixture is only defined for the ga backend")
        demo = experiments.demo_patsmith_fixture(args.alpha, args.beta, args.gamma)
    else:
        demo = experiments.demo_patsmith(_backend(args, "ga"), seed, args.memory)
    if args.format == "json":
        _emit(formats.dumps({**meta, "transcript": demo.lines, "recovered": demo.recovered, "ok": demo.ok}), args)
    else:
        _emit(demo.text(), args)
    return EXIT_OK if demo.ok else EXIT_FAIL


def cmd_experiment_capacity(args, seed: int, meta: dict) -> int:
    kinds = (args.backend or ",".join(BACKENDS)).split(",")
    for kind in kinds:
        if kind not in BACKENDS:
            raise UsageError(f"unknown backend {kind!r}")
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    cells = []
    for kind in kinds:
        for n in args.n or [None]:
            for pairs in args.pairs:
                try:
                    backend = Backend.default(kind, n, args.k, args.eps)
                except ValueError as exc:
                    raise UsageError(str(exc)) from None
                if pairs < 1 or args.memory < pairs:
                    raise UsageError(f"need 1 <= N <= --memory, got N={pairs}")
                if kind == "ga" and args.memory > 2 ** backend.k:
                    raise UsageError(f"--memory {args.memory} exceeds the {2 ** backend.k} GA fillers with k={backend.k}")
                cells.append((backend, pairs))
    rows = [experiments.run_capacity(b, p, args.trials, seed, args.memory, args.jobs) for b, p in cells]
    if args.format == "json":
        _emit(formats.dumps({**meta, "rows": [r.as_dict() for r in rows]}), args)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(experiments.CSV_HEADER)
        for r in rows:
            w.writerow(r.csv_fields())
        _emit(buf.getvalue(), args)
        for r in rows:
            if r.subspace_exit_rate is not None:
                print(f"# ga n={r.n} N={r.N}: subspace exit {r.subspace_exit_rate:.6g}, "
                      f"accuracy given exit {r.accuracy_given_exit:.6g}", file=sys.stderr)
    return EXIT_OK


def _vec(v) -> str:
    return "(" + ", ".join(f"{float(t) + 0.0:g}" for t in v) + ")"


def cmd_experiment_basis(args, seed: int, meta: dict) -> int:
    rep = experiments.run_basis(args.trials, seed)
    x = y = np.array([1.0, 0.0])
    c = hrr.circ_conv(x, y)
    cr = hrr.circ_conv(experiments.rotate(x), experiments.rotate(y))
    back = np.array([-cr[1], cr[0]]) + 0.0
    lines = [
        f"example x=y=(1,0): conv {_vec(c)}; rotated-basis components conv {_vec(cr)} "
        f"= {_vec(back)} in the original basis",
        f"pairs {rep.pairs} seed {seed} resampled {rep.resampled}",
        f"convolution differs across bases: {rep.differing}/{rep.pairs} (margin > {rep.conv_margin:g}), "
        f"smallest gap {rep.min_conv_gap:.6g}",
        f"geometric product largest gap {rep.max_gp_gap:.6g} (tolerance {rep.gp_tol:g})",
        f"result {'ok' if rep.ok else 'FAIL'}",
    ]
    if args.format == "json":
        _emit(formats.dumps({**meta, "pairs": rep.pairs, "differing": rep.differing,
                             "min_conv_gap": rep.min_conv_gap, "max_gp_gap": rep.max_gp_gap,
                             "resampled": rep.resampled, "ok": rep.ok}), args)
    else:
        _emit("\n".join(lines) + "\n", args)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_oracle(args, seed: int, meta: dict) -> int:
    n = _single_n(args) or 4
    if n > 2 * cartan.MAX_FACTORS:
        raise UsageError(f"n={n} exceeds the oracle cap of {2 * cartan.MAX_FACTORS} generators")
    try:
        cfg = cartan.CartanConfig(n, args.m) if args.m else cartan.CartanConfig.minimal(n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = cartan.oracle_verify(n, cfg, args.sample, seed)
    if args.format == "json":
        _emit(formats.dumps({**meta, "n": rep.n, "m": rep.m, "pairs": rep.pairs, "passed": rep.passed,
                             "failed": rep.failed, "worst_deviation": rep.worst_deviation,
                             "exhaustive": rep.exhaustive}), args)
    else:
        mode = "exhaustive" if rep.exhaustive else f"sampled (seed {seed})"
        _emit(f"oracle n={rep.n} m={rep.m} {mode}: {rep.passed}/{rep.pairs} pass, "
              f"worst deviation {rep.worst_deviation:.3g}\n", args)
    return EXIT_OK if rep.ok else EXIT_FAIL


def _load(arg: str, args) -> tuple[str, object]:
    if arg.lower().startswith(("0b", "0x")):
        bits = formats.parse_literal(arg, _single_n(args))
        kind = args.backend or "bsc"
        if kind == "bsc":
            return kind, bits
        if kind == "ga":
            mask = sum(1 << i for i, b in enumerate(bits) if b)
            return kind, ga.Multivector(int(bits.size), {mask: 1.0})
        raise UsageError("bit literals are only accepted for ga and bsc")
    try:
        obj = json.loads(Path(arg).read_text(encoding="utf-8"))
    except OSError as exc:
        raise FormatError(f"cannot read {arg}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{arg}: invalid JSON ({exc.msg})") from None
    kind, item = formats.item_from_json(obj)
    if args.backend and args.backend != kind:
        raise BackendMismatch(f"{arg} holds a {kind} item but --backend is {args.backend}")
    return kind, item


def _load_all(paths, args) -> tuple[str, list]:
    loaded = [_load(p, args) for p in paths]
    kinds = {k for k, _ in loaded}
    if len(kinds) != 1:
        raise BackendMismatch(f"inputs mix backends: {sorted(kinds)}")
    kind = kinds.pop()
    items = [it for _, it in loaded]
    dims = {it.dim if kind == "ga" else int(np.asarray(it).size) for it in items}
    if len(dims) != 1:
        raise BackendMismatch(f"inputs have different dimensions: {sorted(dims)}")
    return kind, items


def cmd_bind(args, seed: int, meta: dict) -> int:
    kind, (a, b) = _load_all(args.inputs, args)
    if kind == "ga":
        out = ga.gp(a, b)
    elif kind == "hrr":
        out = hrr.circ_conv(a, b)
    else:
        out = bsc.xor_bind(a, b)
    _emit(formats.dumps(formats.item_to_json(kind, out)), args)
    return EXIT_OK


def cmd_unbind(args, seed: int, meta: dict) -> int:
    kind, (role, trace) = _load_all([args.role, args.trace], args)
    if kind == "ga":
        if args.exact:
            role = _ga_inverse(role)
        out = ga.gp(role, trace)
    elif kind == "hrr":
        out = hrr.circ_conv(hrr.exact_inverse(role, args.eps), trace) if args.exact else hrr.approx_unbind(role, trace)
    else:
        out = bsc.xor_bind(role, trace)
    _emit(formats.dumps(formats.item_to_json(kind, out)), args)
    return EXIT_OK


def _ga_inverse(a: ga.Multivector) -> ga.Multivector:
    if len(a) == 1:
        (mask, coeff), = a.terms.items()
        return ga.Multivector(a.dim, {mask: ga.blade_square_sign(mask) / coeff})
    if a.is_vector() and a:
        return ga.vector_inverse(a)
    raise NotInvertible("exact GA unbinding needs a blade or a nonzero vector role")


def cmd_bundle(args, seed: int, meta: dict) -> int:
    kind, items = _load_all(args.inputs, args)
    weights = args.weights or [1.0] * len(items)
    if len(weights) != len(items):
        raise UsageError("--weights must give one weight per input")
    if kind == "bsc":
        if any(w != 1.0 for w in weights):
            raise UsageError("bsc bundling is a majority vote and takes no weights")
        out = bsc.majority_bundle(items)
    elif kind == "ga":
        out = ga.Multivector(items[0].dim)
        for w, it in zip(weights, items):
            out = out + w * it
    else:
        out = sum(w * np.asarray(it) for w, it in zip(weights, items))
    _emit(formats.dumps(formats.item_to_json(kind, out)), args)
    return EXIT_OK


_COMMANDS = {
    ("demo", "patsmith"): cmd_demo_patsmith,
    ("experiment", "capacity"): cmd_experiment_capacity,
    ("experiment", "basis"): cmd_experiment_basis,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    key = (args.command, getattr(args, "demo", None) or getattr(args, "experiment", None))
    handler = _COMMANDS.get(key) or globals()[f"cmd_{args.command}"]
    try:
        seed, source = _resolve_seed(args)
        meta = {"seed": seed}
        if source:
            meta["seed_source"] = source
            print(f"# seed {seed} from ${source}", file=sys.stderr)
        return handler(args, seed, meta)
    except UsageError as exc:
        parser.error(str(exc))
    except (FormatError, ValueError) as exc:
        if isinstance(exc, (BackendMismatch, DimensionMismatch)):
            print(f"gahrr: mismatch: {exc}", file=sys.stderr)
            return EXIT_MISMATCH
        print(f"gahrr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotInvertible as exc:
        print(f"gahrr: not invertible: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
