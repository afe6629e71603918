from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chordws.errors import DegreeOverflow, DuplicateNode, ParseError
from chordws.poly import C, ONE, Y, ZERO, MultiPoly, add, interpolate_in_c, is_quasihomogeneous, mul, parse, to_text

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 2)), fractions, max_size=5).map(MultiPoly)
c_polys = st.lists(fractions, max_size=6).map(lambda cs: MultiPoly({(k, 0): a for k, a in enumerate(cs)}))


def test_add_examples():
    assert add(C, -C) == ZERO
    assert add(C**2 - Y, Y) == C**2
    assert add(C - Fraction(1, 2), Fraction(1, 2)) == C


def test_mul_examples():
    assert mul(C, C) == C**2
    assert mul(C - Fraction(1, 2), C) == C**2 - C.scale(Fraction(1, 2))
    p = C**3 - C * Y + 7
    assert mul(p, ONE) == p


def test_zero_terms_dropped():
    assert MultiPoly({(1, 0): 0, (0, 0): 3}).terms == {(0, 0): Fraction(3)}
    assert (C - C).terms == {}


def test_interpolate_examples():
    assert interpolate_in_c([(0, 1), (1, 1)], 1) == ONE
    assert interpolate_in_c([(0, 0), (1, 1), (2, 4)], 2) == C**2
    with pytest.raises(DegreeOverflow):
        interpolate_in_c([(0, 0), (1, 1), (2, 3)], 1)


def test_interpolate_rejects_duplicates():
    with pytest.raises(DuplicateNode):
        interpolate_in_c([(1, 0), (1, 1)], 1)


def test_interpolate_needs_enough_points():
    with pytest.raises(ValueError):
        interpolate_in_c([(0, 0)], 2)


def test_quasihomogeneous_examples():
    assert is_quasihomogeneous(C**2 - Y, 2)
    assert not is_quasihomogeneous(C**2 - Y, 3)
    assert is_quasihomogeneous(ZERO, 5)


def test_text_form():
    assert to_text(C**2 - C.scale(Fraction(1, 2))) == "c^2 - 1/2*c"
    assert to_text(C**3 - 3 * C * Y) == "c^3 - 3*c*y"
    assert to_text(ZERO) == "0"
    assert to_text(-Y) == "-y"
    assert to_text(MultiPoly.const(Fraction(-5, 8))) == "-5/8"


def test_parse_errors():
    with pytest.raises(ParseError):
        parse("")
    with pytest.raises(ParseError):
        parse("c^x")


def test_big_integers_are_exact():
    p = (C + 10**30) ** 3
    assert p.coefficient(0) == 10**90


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == ZERO


@given(polys, polys)
def test_coefficients_stay_reduced(p, q):
    for coef in (p * q).terms.values():
        assert isinstance(coef, Fraction) and coef != 0


@given(polys)
def test_text_round_trip(p):
    assert parse(to_text(p)) == p


@given(polys)
def test_json_round_trip(p):
    assert MultiPoly.from_json(p.to_json()) == p


@given(c_polys, st.integers(0, 3))
def test_interpolation_reproduces(p, extra):
    d = max(p.degree_c(), 0) + extra
    nodes = [Fraction(k * k + 1, k + 2) for k in range(d + 2)]
    assert interpolate_in_c([(x, p.evaluate(x)) for x in nodes], d) == p
