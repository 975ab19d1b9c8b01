"""JSON forms of items, vocabularies and records.

Multivector  {"n": 4, "terms": {"0110": 1.0}}   bit strings written x1 first
RealTuple    {"n": 3, "values": [0.1, 0.2, 0.3]}
BitString    {"n": 4, "bits": "0101"}
Vocabulary   {"backend": "ga", "n": 4, "k": 2, "roles": {...}, "fillers": {...}}
Record       {"pairs": [{"role": "name", "filler": "Pat", "weight": 1.0}]}

GA vocabulary items may be bare bit strings (``"1010"``) or multivector
objects holding a single blade.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from . import bsc, ga, hrr
from .errors import FormatError
from .vsa import Backend, Pair, Record, Vocabulary


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def multivector_to_json(a: ga.Multivector) -> dict:
    return {"n": a.dim, "terms": a.as_dict()}


def tuple_to_json(x) -> dict:
    x = hrr.as_tuple(x)
    return {"n": int(x.size), "values": [float(v) for v in x]}


def bits_to_json(x) -> dict:
    x = bsc.as_bits(x)
    return {"n": int(x.size), "bits": bsc.bits_to_str(x)}


def item_to_json(kind: str, item) -> dict:
    if kind == "ga":
        return multivector_to_json(item)
    if kind == "hrr":
        return tuple_to_json(item)
    if kind == "bsc":
        return bits_to_json(item)
    raise ValueError(f"unknown backend {kind!r}")


def _declared_n(obj: dict, actual: int) -> None:
    n = obj.get("n", actual)
    if not isinstance(n, int) or n != actual:
        raise FormatError(f"declared n={n!r} does not match content length {actual}")


def item_from_json(obj: Any) -> tuple[str, Any]:
    """Parse any item object, returning ``(backend, value)``."""
    if not isinstance(obj, dict):
        raise FormatError("item must be a JSON object")
    try:
        if "terms" in obj:
            n = obj.get("n")
            terms = obj["terms"]
            if not isinstance(n, int) or not isinstance(terms, dict):
                raise FormatError("multivector needs integer 'n' and object 'terms'")
            parsed = {}
            for bits, coeff in terms.items():
                mask, dim = ga.str_to_mask(bits)
                if dim != n:
                    raise FormatError(f"term {bits!r} has length {dim}, expected {n}")
                parsed[mask] = parsed.get(mask, 0.0) + float(coeff)
            return "ga", ga.Multivector(n, parsed)
        if "values" in obj:
            values = hrr.as_tuple(obj["values"])
            _declared_n(obj, values.size)
            return "hrr", values
        if "bits" in obj:
            bits = bsc.str_to_bits(obj["bits"])
            _declared_n(obj, bits.size)
            return "bsc", bits
    except FormatError:
        raise
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from exc
    raise FormatError("item has none of 'terms', 'values' or 'bits'")


def parse_literal(text: str, n: int | None = None) -> np.ndarray:
    """Bits from ``0b...`` or ``0x...`` literals, most significant digit = x1.

    With ``n`` given, trailing bits beyond ``n`` must be zero and are dropped.
    """
    t = text.strip().lower().replace("_", "")
    if t.startswith("0b"):
        digits = t[2:]
    elif t.startswith("0x"):
        try:
            digits = "".join(f"{int(ch, 16):04b}" for ch in t[2:])
        except ValueError:
            raise FormatError(f"bad hex literal {text!r}") from None
    else:
        raise FormatError(f"literal must start with 0b or 0x: {text!r}")
    try:
        bits = bsc.str_to_bits(digits)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if n is not None:
        if n > bits.size:
            bits = np.concatenate([bits, np.zeros(n - bits.size, dtype=np.uint8)])
        elif bits[n:].any():
            raise FormatError(f"literal {text!r} has set bits beyond n={n}")
        else:
            bits = bits[:n]
    return bits


def _ga_item(value: Any, n: int) -> ga.Multivector:
    if isinstance(value, str):
        mv = ga.Multivector.blade(value)
    else:
        kind, mv = item_from_json(value)
        if kind != "ga":
            raise FormatError("GA vocabulary item is not a multivector")
    if mv.dim != n:
        raise FormatError(f"GA item has dimension {mv.dim}, expected {n}")
    return mv


def vocabulary_to_json(voc: Vocabulary) -> dict:
    b = voc.backend
    out: dict[str, Any] = {"backend": b.kind, "n": b.n}
    if b.kind == "ga":
        out["k"] = b.k

    def enc(item):
        if b.kind == "ga":
            (mask,) = item.terms
            if item[mask] == 1.0:
                return ga.mask_to_str(mask, b.n)
        return item_to_json(b.kind, item)

    out["roles"] = {k: enc(v) for k, v in voc.roles.items()}
    out["fillers"] = {k: enc(v) for k, v in voc.fillers.items()}
    if voc.seed is not None:
        out["seed"] = int(voc.seed)
    return out


def vocabulary_from_json(obj: Any) -> Vocabulary:
    if not isinstance(obj, dict):
        raise FormatError("vocabulary must be a JSON object")
    try:
        backend = Backend(obj["backend"], obj["n"], obj.get("k"))

        def dec(value):
            if backend.kind == "ga":
                return _ga_item(value, backend.n)
            kind, item = item_from_json(value)
            if kind != backend.kind:
                raise FormatError(f"{kind} item in a {backend.kind} vocabulary")
            return item

        roles = {k: dec(v) for k, v in obj["roles"].items()}
        fillers = {k: dec(v) for k, v in obj["fillers"].items()}
        return Vocabulary(backend, roles, fillers, obj.get("seed"))
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise FormatError(f"bad vocabulary: {exc}") from exc


def record_to_json(rec: Record) -> dict:
    return {"pairs": [{"role": p.role, "filler": p.filler, "weight": p.weight} for p in rec.pairs]}


def record_from_json(obj: Any) -> Record:
    try:
        return Record(tuple(Pair(p["role"], p["filler"], float(p.get("weight", 1.0))) for p in obj["pairs"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad record: {exc}") from exc
