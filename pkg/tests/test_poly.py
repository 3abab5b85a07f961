import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gf2iter import (
    Gf2Poly,
    HexParseError,
    add,
    extract,
    format_hex,
    mul_schoolbook,
    op_counts_schoolbook,
    parse_hex,
    shift_left,
)
from helpers import convolve_bits, from_bits, to_bits

polys = st.integers(0, 2**300 - 1).map(Gf2Poly)
X = Gf2Poly(0b10)
ONE = Gf2Poly(1)


def test_add_examples():
    a = Gf2Poly(0b1011)
    assert add(a, a) == Gf2Poly(0)
    assert add(a, Gf2Poly(0)) == a
    assert add(Gf2Poly(0b101), Gf2Poly(0b011)) == Gf2Poly(0b110)


def test_add_width_is_max():
    assert add(Gf2Poly(1, 10), Gf2Poly(1, 4)).width == 10


def test_mul_examples():
    assert mul_schoolbook(Gf2Poly(0b11), Gf2Poly(0b11)) == Gf2Poly(0b101)
    a = Gf2Poly(0b110101)
    assert mul_schoolbook(a, ONE) == a
    # (x^2+x+1)(x+1) = x^3+x^2+x + x^2+x+1
    assert mul_schoolbook(Gf2Poly(0b111), Gf2Poly(0b11)) == Gf2Poly(0b1001)


def test_mul_width_is_2n_minus_1():
    p = mul_schoolbook(Gf2Poly(1, 233), Gf2Poly(1, 233))
    assert p.width == 465


def test_equality_ignores_width():
    assert Gf2Poly(5, 3) == Gf2Poly(5, 100)
    assert hash(Gf2Poly(5, 3)) == hash(Gf2Poly(5, 100))


def test_degree():
    assert Gf2Poly(0).degree == -1
    assert Gf2Poly(1).degree == 0
    assert Gf2Poly(1 << 232).degree == 232


def test_width_must_hold_value():
    with pytest.raises(ValueError):
        Gf2Poly(0b1000, 3)
    with pytest.raises(ValueError):
        Gf2Poly(-1)


def test_from_bits_roundtrip():
    p = Gf2Poly.from_bits([1, 0, 1, 1, 0])
    assert p == Gf2Poly(0b1101)
    assert p.width == 5
    assert p.bits == [1, 0, 1, 1, 0]


@pytest.mark.parametrize("n, expected", [(233, (54289, 53824)), (1, (1, 0)), (4, (16, 9))])
def test_op_counts_schoolbook(n, expected):
    assert op_counts_schoolbook(n) == expected


def test_op_counts_rejects_zero():
    with pytest.raises(ValueError):
        op_counts_schoolbook(0)


def test_shift_and_extract():
    assert shift_left(ONE, 233) == Gf2Poly.monomial(233)
    assert extract(Gf2Poly(0b1010), 1, 0) == X
    with pytest.raises(ValueError):
        extract(ONE, 0, 1)


@given(polys, st.integers(0, 500))
def test_extract_inverts_shift(a, k):
    w = max(a.width, 1)
    assert extract(shift_left(a, k), k + w - 1, k) == a


@pytest.mark.parametrize("text, value", [("0x3", 0b11), ("0x0", 0), ("0X1f", 0x1F), ("0x0010", 16)])
def test_parse_hex(text, value):
    assert parse_hex(text) == Gf2Poly(value)


@pytest.mark.parametrize("text, canonical", [("0x0010", "0x10"), ("0x000", "0x0"), ("0xAbC", "0xabc")])
def test_hex_roundtrip_canonical(text, canonical):
    assert format_hex(parse_hex(text)) == canonical


@pytest.mark.parametrize("text, position", [("0x12g4", 4), ("12", 0), ("0x", 2), ("0x1 ", 3), ("0b101", 1)])
def test_parse_hex_errors_name_position(text, position):
    with pytest.raises(HexParseError) as exc:
        parse_hex(text)
    assert exc.value.position == position
    assert f"position {position}" in str(exc.value)


@given(polys)
def test_hex_roundtrip(a):
    assert parse_hex(format_hex(a)) == a


@given(polys, polys)
def test_commutative(a, b):
    assert add(a, b) == add(b, a)
    assert mul_schoolbook(a, b) == mul_schoolbook(b, a)


@settings(max_examples=50)
@given(polys, polys, polys)
def test_associative_and_distributive(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul_schoolbook(mul_schoolbook(a, b), c) == mul_schoolbook(a, mul_schoolbook(b, c))
    assert mul_schoolbook(a, add(b, c)) == add(mul_schoolbook(a, b), mul_schoolbook(a, c))


@given(polys, polys)
def test_degree_adds(a, b):
    p = mul_schoolbook(a, b)
    if a and b:
        assert p.degree == a.degree + b.degree
    else:
        assert p == Gf2Poly(0)


def test_exhaustive_small_against_convolution():
    for a, b in itertools.product(range(256), repeat=2):
        expected = from_bits(convolve_bits(to_bits(a, 8), to_bits(b, 8)))
        assert mul_schoolbook(Gf2Poly(a, 8), Gf2Poly(b, 8)).value == expected, (a, b)
