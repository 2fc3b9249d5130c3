"""Lattice-variable polynomials, Laurent conversion, basis expansion."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qstruct.exactnum import FORMAL, RationalDomain, Scalar
from qstruct.polycore import (
    BasisError,
    LaurentPoly,
    MonicBasis,
    PalindromeError,
    XPoly,
    expand_in_basis,
    from_laurent,
    half_shift,
    parse_xpoly,
    to_laurent,
)

HALF = Scalar.from_fraction(Fraction(1, 2))
QUARTER = Scalar.from_fraction(Fraction(1, 4))


def xp(*fracs):
    return XPoly(FORMAL, [Scalar.from_fraction(Fraction(f)) for f in fracs])


small_fracs = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=6),
)

xpolys = st.lists(small_fracs, min_size=0, max_size=13).map(lambda cs: xp(*cs))


# -- to_laurent / from_laurent ---------------------------------------------------


def test_to_laurent_constant():
    g = to_laurent(xp(1))
    assert dict(g.items()) == {0: Scalar.from_fraction(1)}


def test_to_laurent_x():
    g = to_laurent(XPoly.x(FORMAL))
    assert g.coeff(1) == HALF and g.coeff(-1) == HALF
    assert g.support == (-1, 1)


def test_to_laurent_x_squared():
    g = to_laurent(XPoly.x_power(FORMAL, 2))
    assert g.coeff(2) == QUARTER
    assert g.coeff(0) == HALF
    assert g.coeff(-2) == QUARTER
    assert g.support == (-2, 0, 2)


def test_from_laurent_inverts_examples():
    assert from_laurent(to_laurent(xp(1))) == xp(1)
    g = LaurentPoly(FORMAL, {-2: QUARTER, 0: HALF, 2: QUARTER})
    assert from_laurent(g) == XPoly.x_power(FORMAL, 2)


def test_from_laurent_rejects_non_palindromic():
    g = LaurentPoly(FORMAL, {1: Scalar.from_fraction(1)})
    with pytest.raises(PalindromeError):
        from_laurent(g)


@given(xpolys)
@settings(max_examples=50)
def test_round_trip_random(f):
    assert from_laurent(to_laurent(f)) == f


@given(xpolys, xpolys)
@settings(max_examples=30)
def test_to_laurent_is_multiplicative(f, g):
    assert to_laurent(f * g) == to_laurent(f) * to_laurent(g)


def test_palindromic_always():
    f = xp(3, -2, 5, 7, -1)
    assert to_laurent(f).is_palindromic()


# -- half_shift -------------------------------------------------------------------


def test_half_shift_constant_invariant():
    g = LaurentPoly(FORMAL, {0: Scalar.from_fraction(7)})
    assert half_shift(g, +1) == g
    assert half_shift(g, -1) == g


def test_half_shift_rules():
    one = Scalar.from_fraction(1)
    g = LaurentPoly(FORMAL, {1: one, -1: one})
    s = half_shift(g, +1)
    assert s.coeff(1) == Scalar.u_pow(2)
    assert s.coeff(-1) == Scalar.u_pow(-2)
    h = half_shift(LaurentPoly(FORMAL, {2: one}), -1)
    assert h.coeff(2) == Scalar.u_pow(-4)


def test_half_shifts_compose_to_identity():
    f = xp(1, -3, 2, 5)
    g = to_laurent(f)
    assert half_shift(half_shift(g, +1), -1) == g


# -- monic bases -------------------------------------------------------------------


def chebyshev_t_basis(n):
    """Monic Chebyshev-T basis built directly from its recurrence."""
    polys = [XPoly.one(FORMAL), XPoly.x(FORMAL)]
    for k in range(2, n + 1):
        c = HALF if k == 2 else QUARTER
        polys.append(polys[-1].mul_x_minus(FORMAL.zero) - polys[-2].scale(c))
    return MonicBasis(polys[: n + 1])


def test_expand_x_squared_in_chebyshev_t():
    basis = chebyshev_t_basis(3)
    coeffs = expand_in_basis(XPoly.x_power(FORMAL, 2), basis)
    assert coeffs == [HALF, FORMAL.zero, FORMAL.one]
    assert basis[2] == xp(Fraction(-1, 2), 0, 1)


def test_expand_basis_element_is_unit_vector():
    basis = chebyshev_t_basis(4)
    coeffs = expand_in_basis(basis[3], basis)
    assert coeffs == [FORMAL.zero] * 3 + [FORMAL.one]


def test_expand_x_times_t1():
    basis = chebyshev_t_basis(3)
    f = XPoly.x(FORMAL) * basis[1]
    assert expand_in_basis(f, basis) == [HALF, FORMAL.zero, FORMAL.one]


def test_expand_degree_overflow():
    basis = chebyshev_t_basis(2)
    with pytest.raises(BasisError):
        expand_in_basis(XPoly.x_power(FORMAL, 5), basis)


def test_basis_validation():
    with pytest.raises(BasisError):
        MonicBasis([XPoly.one(FORMAL), xp(0, 2)])  # 2x is not monic
    with pytest.raises(BasisError):
        MonicBasis([XPoly.x(FORMAL)])  # degree 1 at index 0


@given(xpolys)
@settings(max_examples=40)
def test_expand_recombines(f):
    basis = chebyshev_t_basis(13)
    coeffs = expand_in_basis(f, basis)
    acc = XPoly.zero(FORMAL)
    for k, c in enumerate(coeffs):
        acc = acc + basis[k].scale(c)
    assert acc == f


# -- rendering / parsing -------------------------------------------------------------


def test_render_examples():
    assert str(xp(Fraction(-1, 2), 0, 1)) == "x^2 - 1/2"
    assert str(XPoly.zero(FORMAL)) == "0"
    assert str(xp(1)) == "1"


def test_parse_xpoly():
    p = parse_xpoly("x^2 - 1/2", FORMAL)
    assert p == xp(Fraction(-1, 2), 0, 1)
    q = parse_xpoly("(x - 1/3)*(x + 1/3)", FORMAL)
    assert q == xp(Fraction(-1, 9), 0, 1)
    r = parse_xpoly("u^2*x", FORMAL)
    assert r.coeff(1) == Scalar.u_pow(2)


def test_parse_xpoly_rational_domain():
    dom = RationalDomain(Fraction(1, 2))
    p = parse_xpoly("x - u^4", dom)
    assert p.coeff(0) == -Fraction(1, 16)


def test_round_trip_through_str():
    f = xp(Fraction(1, 8), 0, -1, 0, 1)
    assert parse_xpoly(str(f), FORMAL) == f
