"""Field arithmetic in Q(u): canonical forms, evaluation, parsing."""

import math
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qstruct.exactnum import (
    ParseError,
    PoleError,
    Rational,
    Scalar,
    ScalarDivisionError,
    UPoly,
    parse_scalar,
    scalar_arith,
    scalar_eval,
)

U = Scalar.u_pow(1)
ONE = Scalar.from_fraction(1)


def sc(text):
    return parse_scalar(text)


# -- strategies -------------------------------------------------------------

small_fracs = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=9),
)

upolys = st.lists(small_fracs, min_size=0, max_size=6).map(UPoly)


@st.composite
def scalars(draw, allow_zero=True):
    num = draw(upolys)
    den = draw(upolys.filter(lambda p: not p.is_zero()))
    s = Scalar(num, den)
    if not allow_zero and s.is_zero():
        return s + 1
    return s


# -- Rational surface ---------------------------------------------------------


def test_rational_invariants():
    r = Rational(-6, 8)
    assert r.denominator > 0
    assert math.gcd(abs(r.numerator), r.denominator) == 1
    assert Rational(0, 5) == Rational(0, 1)


# -- UPoly -------------------------------------------------------------------


def test_upoly_coefficients_roundtrip():
    p = UPoly([Fraction(1, 2), 0, Fraction(-3, 4)])
    assert p.coefficients() == (Fraction(1, 2), Fraction(0), Fraction(-3, 4))
    assert p.degree == 2
    assert p.leading() == Fraction(-3, 4)


def test_upoly_leading_coefficient_nonzero():
    p = UPoly([1, 2, 0, 0])
    assert p.degree == 1
    assert UPoly([]).is_zero()
    assert UPoly([0, 0]).is_zero()


@given(upolys, upolys)
def test_upoly_mul_matches_fraction_convolution(a, b):
    prod = a * b
    ca, cb = a.coefficients(), b.coefficients()
    expect = [Fraction(0)] * (len(ca) + len(cb) - 1 if ca and cb else 0)
    for i, x in enumerate(ca):
        for j, y in enumerate(cb):
            expect[i + j] += x * y
    while expect and expect[-1] == 0:
        expect.pop()
    assert prod.coefficients() == tuple(expect)


def test_kronecker_path_against_schoolbook():
    # dense enough to cross the packing cutoff
    a = UPoly([((-1) ** k) * (k + 1) for k in range(80)])
    b = UPoly([(k % 7) - 3 for k in range(90)])
    prod = a * b
    check = UPoly([0])
    for k, c in enumerate(b.coefficients()):
        if c:
            check = check + UPoly([0] * k + [1]).scale(c) * a
    assert prod == check


@given(upolys, upolys.filter(lambda p: not p.is_zero()))
def test_upoly_gcd_divides_both(a, b):
    g = UPoly.gcd(a, b)
    if a.is_zero():
        return
    assert a.divexact(g) * g == a
    assert b.divexact(g) * g == b


# -- Scalar canonical form -----------------------------------------------------


def test_monomial_product():
    assert U * U == Scalar.u_pow(2)


def test_fraction_addition_normalizes():
    x = ONE / (ONE - U)
    y = U / (ONE - U)
    assert x + y == (ONE + U) / (ONE - U)
    # the canonical denominator is monic: here u - 1, numerator -(1 + u)
    s = x + y
    assert s.den.leading() == 1


def test_division_by_zero_scalar():
    with pytest.raises(ScalarDivisionError):
        scalar_arith(Scalar.u_pow(2), Scalar.from_fraction(0), "div")


def test_negative_powers_live_in_the_denominator():
    s = Scalar.u_pow(-3)
    assert s.num == UPoly([1])
    assert s.den == UPoly([0, 0, 0, 1])
    assert s * Scalar.u_pow(3) == ONE


def test_q_pow_quarter_units():
    assert Scalar.q_pow(Fraction(1, 4)) == U
    assert Scalar.q_pow(Fraction(1, 2)) == Scalar.u_pow(2)
    assert Scalar.q_pow(1) == Scalar.u_pow(4)
    assert Scalar.q_pow(Fraction(-3, 2)) == Scalar.u_pow(-6)
    with pytest.raises(ValueError):
        Scalar.q_pow(Fraction(1, 3))


@given(scalars(), scalars(), scalars())
@settings(max_examples=60)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if not x.is_zero():
        assert x * x.inverse() == ONE


@given(scalars())
def test_canonical_idempotence(x):
    again = Scalar(x.num, x.den)
    assert again == x
    assert again.den.leading() in (Fraction(0), Fraction(1)) or not again.den.is_zero()
    assert UPoly.gcd(x.num, x.den).degree <= 0 or x.is_zero()


# -- evaluation ---------------------------------------------------------------


def test_eval_alpha_at_one_half():
    alpha = (Scalar.u_pow(2) + Scalar.u_pow(-2)) / 2
    assert str(alpha) == "(u^4+1)/(2*u^2)"
    assert scalar_eval(alpha, Fraction(1, 2)) == Fraction(17, 8)


def test_eval_constant():
    assert scalar_eval(ONE, Fraction(1, 3)) == 1


def test_eval_pole():
    with pytest.raises(ValueError):
        # u0 = 1 (q = 1) is rejected outright, so 1/(1-u) at 1 errors here
        scalar_eval(ONE / (ONE - U), 1)
    # genuine pole inside (0, 1)
    t = ONE / (ONE - U - U)  # zero at u = 1/2
    with pytest.raises(PoleError):
        scalar_eval(t, Fraction(1, 2))


def test_eval_outside_unit_interval_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        val = scalar_eval(U + 1, Fraction(3, 2))
    assert val == Fraction(5, 2)
    assert any("outside (0, 1)" in str(w.message) for w in caught)


@given(scalars(), scalars())
@settings(max_examples=40)
def test_eval_is_a_homomorphism(x, y):
    u0 = Fraction(1, 3)
    try:
        vx, vy = x.eval_at(u0), y.eval_at(u0)
    except PoleError:
        return
    assert (x + y).eval_at(u0) == vx + vy
    assert (x * y).eval_at(u0) == vx * vy
    assert (x - y).eval_at(u0) == vx - vy
    if not y.is_zero() and vy != 0:
        assert (x / y).eval_at(u0) == vx / vy


# -- rendering and parsing ------------------------------------------------------


def test_str_examples():
    assert str(Scalar.from_fraction(Fraction(-3, 4))) == "-3/4"
    assert str(Scalar.u_pow(-2)) == "1/u^2"
    assert str((ONE + U) / 2) == "(u+1)/2"
    assert str(Scalar.from_fraction(0)) == "0"


@given(scalars())
@settings(max_examples=60)
def test_parse_str_roundtrip(x):
    assert parse_scalar(str(x)) == x


def test_parse_rejects_garbage():
    for bad in ("u**u", "v+1", "1//2", "import os", "u^(1/2)"):
        with pytest.raises(ParseError):
            parse_scalar(bad)


def test_scalar_arith_dispatch():
    a, b = sc("u+1"), sc("u-1")
    assert scalar_arith(a, b, "mul") == sc("u^2-1")
    assert scalar_arith(a, b, "add") == sc("2*u")
    assert scalar_arith(a, b, "sub") == sc("2")
    assert scalar_arith(a, b, "div") == sc("(u+1)/(u-1)")
    with pytest.raises(ValueError):
        scalar_arith(a, b, "pow")
