import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gahrr import formats, ga, vsa
from gahrr.errors import FormatError


def test_multivector_json():
    a = ga.Multivector.from_strings({"0110": 1.0, "1111": -0.5})
    obj = formats.item_to_json("ga", a)
    assert obj == {"n": 4, "terms": {"0110": 1.0, "1111": -0.5}}
    assert formats.item_from_json(json.loads(formats.dumps(obj))) == ("ga", a)


def test_tuple_and_bits_json():
    kind, x = formats.item_from_json(formats.item_to_json("hrr", [0.1, -2.0, 3.5]))
    assert kind == "hrr"
    np.testing.assert_array_equal(x, [0.1, -2.0, 3.5])
    obj = formats.item_to_json("bsc", np.array([0, 1, 0, 1], np.uint8))
    assert obj == {"n": 4, "bits": "0101"}
    kind, b = formats.item_from_json(obj)
    assert kind == "bsc"
    np.testing.assert_array_equal(b, [0, 1, 0, 1])


@pytest.mark.parametrize(
    "obj",
    [
        [1, 2],
        {"foo": 1},
        {"n": 3, "terms": {"01": 1.0}},
        {"n": 2, "values": [1.0]},
        {"n": 2, "bits": "012"},
        {"n": "2", "terms": {}},
        {"values": ["a"]},
    ],
)
def test_item_parse_errors(obj):
    with pytest.raises(FormatError):
        formats.item_from_json(obj)


@pytest.mark.parametrize(
    "text, n, expected",
    [
        ("0b1100", None, [1, 1, 0, 0]),
        ("0x3", None, [0, 0, 1, 1]),
        ("0b11", 4, [1, 1, 0, 0]),
        ("0xa0", 4, [1, 0, 1, 0]),
        ("0b1_0", None, [1, 0]),
    ],
)
def test_parse_literal(text, n, expected):
    np.testing.assert_array_equal(formats.parse_literal(text, n), expected)


@pytest.mark.parametrize("text, n", [("1100", None), ("0xg", None), ("0b102", None), ("0b11", 1)])
def test_parse_literal_errors(text, n):
    with pytest.raises(FormatError):
        formats.parse_literal(text, n)


@pytest.mark.parametrize("kind", vsa.BACKENDS)
def test_vocabulary_roundtrip(kind):
    backend = vsa.Backend(kind, 12, 3 if kind == "ga" else None)
    voc = vsa.gen_vocabulary(["r1", "r2"], ["f1", "f2", "f3"], backend, seed=8)
    text = formats.dumps(formats.vocabulary_to_json(voc))
    back = formats.vocabulary_from_json(json.loads(text))
    assert back.backend == voc.backend and back.seed == 8
    assert formats.dumps(formats.vocabulary_to_json(back)) == text


def test_ga_vocabulary_accepts_bitstrings_and_objects():
    obj = {
        "backend": "ga", "n": 4, "k": 2,
        "roles": {"name": "1010"},
        "fillers": {"Pat": {"n": 4, "terms": {"1100": 1.0}}},
    }
    voc = formats.vocabulary_from_json(obj)
    assert voc.role("name") == ga.Multivector.blade("1010")
    assert formats.vocabulary_to_json(voc)["fillers"] == {"Pat": "1100"}


@pytest.mark.parametrize(
    "obj",
    [
        {"backend": "ga", "n": 4, "roles": {"r": "101"}, "fillers": {}},
        {"backend": "hrr", "n": 2, "roles": {"r": {"n": 2, "bits": "01"}}, "fillers": {}},
        {"backend": "bsc", "n": 2, "roles": {}},
        {"backend": "nope", "n": 2, "roles": {}, "fillers": {}},
        "not an object",
    ],
)
def test_vocabulary_errors(obj):
    with pytest.raises(FormatError):
        formats.vocabulary_from_json(obj)


def test_record_roundtrip():
    rec = vsa.patsmith_record(1.0, 2.0, 1.0)
    assert formats.record_from_json(json.loads(formats.dumps(formats.record_to_json(rec)))) == rec
    assert formats.record_from_json({"pairs": [{"role": "a", "filler": "b"}]}).pairs[0].weight == 1.0
    with pytest.raises(FormatError):
        formats.record_from_json({"pairs": [{"role": "a"}]})


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10).flatmap(
    lambda n: st.dictionaries(st.integers(0, (1 << n) - 1), st.floats(-1e6, 1e6, allow_nan=False), max_size=8)
    .map(lambda t: ga.Multivector(n, t))))
def test_multivector_roundtrip_is_exact(a):
    assert formats.item_from_json(json.loads(formats.dumps(formats.item_to_json("ga", a))))[1] == a
