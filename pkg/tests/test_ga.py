import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gahrr import cartan, ga
from gahrr.errors import DimensionMismatch, NotInvertible

from oracles import bubble_reorder, double_loop_sign

B = ga.Blade.parse


@pytest.mark.parametrize(
    "x, y, expected",
    [
        ("1010", "1100", "+c0110"),
        ("1100", "1000", "-c0100"),
        ("11001010", "01000100", "-c10001110"),
        ("1000", "1100", "+c0100"),
        ("1000", "1000", "+c0000"),
    ],
)
def test_blade_mul_examples(x, y, expected):
    assert str(ga.blade_mul(B(x), B(y))) == expected


def test_scalar_is_neutral():
    for mask in range(16):
        x = ga.Blade(mask, 4)
        assert ga.blade_mul(x, ga.Blade(0, 4)) == x
        assert ga.blade_mul(ga.Blade(0, 4), x) == x


def test_blade_mul_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        ga.blade_mul(B("10"), B("100"))


def test_signs_carry_through():
    assert ga.blade_mul(-B("10"), B("01")) == ga.Blade(0b11, 2, -1)


@pytest.mark.parametrize("bits, sign", [("0000", 1), ("1100", -1), ("1110", -1), ("1111", 1), ("1000", 1)])
def test_blade_square_sign(bits, sign):
    assert ga.blade_square_sign(B(bits)) == sign
    sq = ga.blade_mul(B(bits), B(bits))
    assert sq.mask == 0 and sq.sign == sign


@pytest.mark.parametrize("r", range(9))
def test_square_sign_closed_form(r):
    assert ga.blade_square_sign((1 << r) - 1) == (-1) ** (r * (r - 1) // 2)


@pytest.mark.parametrize("bits, expected", [("0000", "+c0000"), ("1100", "-c1100"), ("1000", "+c1000")])
def test_blade_inverse(bits, expected):
    inv = ga.blade_inverse(B(bits))
    assert str(inv) == expected
    assert ga.blade_mul(inv, B(bits)) == ga.Blade(0, 4, 1)


def test_anticommutation_exhaustive():
    for n in range(1, 9):
        for k in range(n):
            bk = ga.Blade(1 << k, n)
            assert ga.blade_mul(bk, bk) == ga.Blade(0, n, 1)
            for l in range(n):
                if k != l:
                    bl = ga.Blade(1 << l, n)
                    assert ga.blade_mul(bk, bl) == -ga.blade_mul(bl, bk)


@pytest.mark.parametrize("n", range(1, 7))
def test_projective_xor_against_bubble_sort(n):
    for x, y in itertools.product(range(1 << n), repeat=2):
        got = ga.blade_mul(ga.Blade(x, n), ga.Blade(y, n))
        sign, mask = bubble_reorder(x, y, n)
        assert got.mask == x ^ y == mask
        assert got.sign == sign == double_loop_sign(x, y, n)


def test_reorder_sign_wide_masks():
    rng = np.random.default_rng(3)
    for _ in range(200):
        x, y = (int(v) for v in rng.integers(0, 2**63, size=2, dtype=np.uint64))
        x |= 1 << 63
        assert ga.reorder_sign(x, y) == double_loop_sign(x, y, 64)


def test_bitstring_roundtrip():
    assert ga.str_to_mask("1100") == (0b0011, 4)
    assert ga.mask_to_str(0b0011, 4) == "1100"
    with pytest.raises(ValueError):
        ga.str_to_mask("10a1")


def test_multivector_rejects_bad_masks():
    with pytest.raises(ValueError):
        ga.Multivector(2, {0b100: 1.0})
    with pytest.raises(ValueError):
        ga.Multivector(65)


def test_prune_after_arithmetic():
    a = ga.Multivector.blade("11", coeff=1.0)
    assert not (a - a)
    assert len(a + ga.Multivector.blade("11", coeff=-1.0 + 1e-16)) == 0


def test_gp_of_2d_vectors_symbolic_form():
    rng = np.random.default_rng(0)
    for _ in range(20):
        x0, x1, y0, y1 = rng.normal(size=4)
        prod = ga.gp(ga.Multivector.vector([x0, x1]), ga.Multivector.vector([y0, y1]))
        assert prod[0] == pytest.approx(x0 * y0 + x1 * y1, abs=1e-14)
        assert prod[0b11] == pytest.approx(x0 * y1 - x1 * y0, abs=1e-14)
        assert prod.grades() <= {0, 2}


def test_gp_frozen_example_agrees_with_matrix_oracle():
    x, y = ga.Multivector.vector([1, 2]), ga.Multivector.vector([3, 4])
    prod = ga.gp(x, y)
    assert prod.as_dict() == {"00": 11.0, "11": -2.0}
    cfg = cartan.CartanConfig.minimal(2)
    np.testing.assert_allclose(cartan.rep_mv(prod, cfg), cartan.rep_mv(x, cfg) @ cartan.rep_mv(y, cfg), atol=1e-12)


def test_unit_scalar_neutral_in_gp():
    psi = ga.Multivector.from_strings({"000": 1.5, "101": -2.0, "111": 0.25})
    one = ga.Multivector.scalar(1.0, 3)
    assert ga.gp(one, psi) == psi == ga.gp(psi, one)


def test_gp_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        ga.gp(ga.Multivector.vector([1, 0]), ga.Multivector.vector([1, 0, 0]))


def test_inner_outer():
    inner, outer = ga.inner_outer(ga.Multivector.vector([1, 0]), ga.Multivector.vector([1, 0]))
    assert inner == 1.0 and not outer
    inner, outer = ga.inner_outer(ga.Multivector.vector([1, 2]), ga.Multivector.vector([3, 4]))
    assert inner == 11.0 and outer.as_dict() == {"11": -2.0}
    inner, outer = ga.inner_outer(ga.Multivector.vector([1, 0]), ga.Multivector.vector([0, 1]))
    assert inner == 0.0 and outer.as_dict() == {"11": 1.0}
    with pytest.raises(ValueError):
        ga.inner_outer(ga.Multivector.blade("11"), ga.Multivector.vector([1, 0]))


def test_vector_inverse():
    b1 = ga.Multivector.vector([1, 0, 0])
    assert ga.vector_inverse(b1) == b1
    inv = ga.vector_inverse(ga.Multivector.vector([3, 4]))
    assert inv.isclose(ga.Multivector.vector([3 / 25, 4 / 25]), tol=1e-15)
    assert ga.gp(inv, ga.Multivector.vector([3, 4])).isclose(ga.Multivector.scalar(1, 2))
    with pytest.raises(NotInvertible):
        ga.vector_inverse(ga.Multivector(2))


def test_grade_project():
    a = ga.Multivector.from_strings({"00": 1, "11": 2})
    assert ga.grade_project(a, 2).as_dict() == {"11": 2.0}
    with pytest.raises(ValueError):
        ga.grade_project(ga.Multivector(4), 5)
    x, y = ga.Multivector.vector([1, 2]), ga.Multivector.vector([3, 4])
    inner, _ = ga.inner_outer(x, y)
    assert ga.grade_project(ga.gp(x, y), 0) == ga.Multivector.scalar(inner, 2)


def test_coeff_norm():
    assert ga.coeff_norm(ga.Multivector(3)) == 0
    assert ga.coeff_norm(ga.Multivector.blade("101")) == 1
    assert ga.coeff_norm(ga.Multivector.from_strings({"00": 3, "11": 4})) == 5


# -- properties ------------------------------------------------------------

@st.composite
def multivectors(draw, n):
    size = draw(st.integers(0, 6))
    masks = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=size, max_size=size))
    coeffs = draw(st.lists(st.floats(-3, 3, allow_nan=False), min_size=size, max_size=size))
    terms = {}
    for m, c in zip(masks, coeffs):
        terms[m] = terms.get(m, 0.0) + c
    return ga.Multivector(n, terms)


@st.composite
def triples(draw):
    n = draw(st.integers(1, 6))
    return n, draw(multivectors(n)), draw(multivectors(n)), draw(multivectors(n))


@settings(max_examples=200, deadline=None)
@given(triples())
def test_associativity(t):
    _, a, b, c = t
    assert ga.gp(ga.gp(a, b), c).isclose(ga.gp(a, ga.gp(b, c)), tol=1e-10)


@settings(max_examples=200, deadline=None)
@given(triples())
def test_distributivity(t):
    _, a, b, c = t
    assert ga.gp(a, b + c).isclose(ga.gp(a, b) + ga.gp(a, c), tol=1e-10)
    assert ga.gp(b + c, a).isclose(ga.gp(b, a) + ga.gp(c, a), tol=1e-10)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8).flatmap(lambda n: st.lists(st.floats(-10, 10, allow_nan=False), min_size=n, max_size=n)))
def test_inverse_law(coords):
    x = ga.Multivector.vector(coords)
    if ga.coeff_norm(x) < 1e-3:
        return
    assert ga.gp(ga.vector_inverse(x), x).isclose(ga.Multivector.scalar(1.0, len(coords)), tol=1e-10)


@settings(max_examples=100, deadline=None)
@given(triples())
def test_matches_matrix_representation(t):
    n, a, b, _ = t
    cfg = cartan.CartanConfig.minimal(n)
    np.testing.assert_allclose(
        cartan.rep_mv(ga.gp(a, b), cfg), cartan.rep_mv(a, cfg) @ cartan.rep_mv(b, cfg), atol=1e-12
    )


def test_vector_square_is_magnitude():
    rng = np.random.default_rng(1)
    for n in range(1, 7):
        x = ga.Multivector.vector(rng.normal(size=n))
        sq = ga.gp(x, x)
        assert sq.grades() <= {0}
        assert sq[0] == pytest.approx(ga.coeff_norm(x) ** 2)
        assert math.isclose(ga.inner_outer(x, x)[0], sq[0])
