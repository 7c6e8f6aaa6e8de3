from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gradedbass import (
    BadPrime,
    Field,
    LinearRelation,
    NonHomogeneous,
    hilbert_series,
    krull_dimension,
    validate_ring,
)
from gradedbass.poly import PolyParseError, format_poly, parse_poly
from gradedbass.rings import independent_set_dimension

from conftest import ring


def test_valid_ring_and_rejections():
    R = ring("xy", "x^2")
    assert R.nvars == 2
    with pytest.raises(NonHomogeneous):
        ring("xy", "x^2 + y")
    with pytest.raises(LinearRelation):
        ring("xy", "x - y")


def test_bad_prime():
    with pytest.raises(BadPrime):
        Field(32004)


def test_field_arithmetic():
    F = Field(7)
    assert F(-1) == 6
    assert F.inv(3) * 3 % 7 == 1
    assert F(Fraction(1, 2)) == 4
    Q = Field.rationals()
    assert Q.inv(Q(3)) == Fraction(1, 3)


@pytest.mark.parametrize("gens, vars_, bound, expect", [
    ((), "x", 3, [1, 1, 1, 1]),
    (("x^2",), "x", 3, [1, 1, 0, 0]),
    (("x^2",), "xy", 3, [1, 2, 2, 2]),
    (("x^2", "x*y", "y^2"), "xy", 3, [1, 2, 0, 0]),
    ((), "xyz", 3, [1, 3, 6, 10]),
])
def test_hilbert_series(gens, vars_, bound, expect):
    assert hilbert_series(ring(vars_, *gens), bound).coefficients == expect


@pytest.mark.parametrize("gens, vars_, dim", [
    ((), "xy", 2),
    (("x^2",), "x", 0),
    (("x^2",), "xy", 1),
    (("x^2", "x*y", "y^2"), "xy", 0),
    (("x*y",), "xyz", 2),
])
def test_krull_dimension(gens, vars_, dim):
    R = ring(vars_, *gens)
    assert krull_dimension(R) == dim
    # second route: maximal independent sets of the initial ideal
    assert independent_set_dimension(R) == dim


def test_parse_errors_carry_columns():
    with pytest.raises(PolyParseError) as e:
        parse_poly("x^2 + $", ["x"], Field())
    assert e.value.col == 6
    with pytest.raises(PolyParseError):
        parse_poly("x + w", ["x"], Field())


@st.composite
def polys(draw):
    terms = draw(st.lists(st.tuples(st.integers(-5, 5), st.integers(0, 3), st.integers(0, 3)),
                          min_size=1, max_size=4))
    return " + ".join(f"({c})*x^{a}*y^{b}" for c, a, b in terms)


@settings(max_examples=60, deadline=None)
@given(polys())
def test_format_parse_roundtrip(text):
    F = Field()
    f = parse_poly(text, ["x", "y"], F)
    assert parse_poly(format_poly(f, ["x", "y"], F), ["x", "y"], F) == f


def test_rational_field_ring():
    R = validate_ring(Field.rationals(), ["x", "y"], ["x^2"])
    assert hilbert_series(R, 3).coefficients == [1, 2, 2, 2]
