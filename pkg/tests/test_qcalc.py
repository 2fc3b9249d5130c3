"""Operator core: D_q, S_q, lattice constants, and the product rules.

The independent oracle used throughout is the raw difference quotient on
lattice points: with h = q^(1/2) rational and a rational sample w = q^s,

    x(s +- 1/2) = (h^(+-1) w + h^(-+1)/w) / 2

so D_q f and S_q f can be checked pointwise in plain Fraction arithmetic
with no Laurent machinery at all.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qstruct.exactnum import FORMAL, RationalDomain, Scalar
from qstruct.polycore import XPoly
from qstruct.qcalc import (
    LatticeConstants,
    alpha,
    alpha_n,
    dq,
    dq_power_leading,
    gamma_n,
    sq,
    u2_poly,
)

U0 = Fraction(1, 2)
RAT = RationalDomain(U0)


def xp(*fracs):
    return XPoly(FORMAL, [Scalar.from_fraction(Fraction(f)) for f in fracs])


def eval_q(s: Scalar, q0: Fraction) -> Fraction:
    """Evaluate a Scalar whose support uses only integer powers of q."""

    def poly_at(p):
        acc = Fraction(0)
        for k, c in enumerate(p.coefficients()):
            if c:
                e = Fraction(k, 4)
                assert e.denominator == 1, "scalar has non-integer q-powers"
                acc += c * q0 ** int(e)
        return acc

    return poly_at(s.num) / poly_at(s.den)


def frac_poly_eval(coeffs, x0: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x0 + c
    return acc


def oracle_points(coeffs, h: Fraction, w: Fraction):
    """(x, D_q f(x), S_q f(x)) at the lattice point with q^s = w, q^(1/2) = h."""
    x = (w + 1 / w) / 2
    xp_ = (h * w + 1 / (h * w)) / 2
    xm = (w / h + h / w) / 2
    fp = frac_poly_eval(coeffs, xp_)
    fm = frac_poly_eval(coeffs, xm)
    return x, (fp - fm) / (xp_ - xm), (fp + fm) / 2


small_fracs = st.builds(
    Fraction,
    st.integers(min_value=-8, max_value=8),
    st.integers(min_value=1, max_value=5),
)

frac_vectors = st.lists(small_fracs, min_size=1, max_size=9)


# -- lattice constants --------------------------------------------------------


def test_lattice_constant_base_values():
    lc = LatticeConstants(FORMAL)
    one = FORMAL.one
    assert lc.alpha_n(0) == one
    assert lc.gamma_n(0) == FORMAL.zero
    assert lc.gamma_n(1) == one
    assert lc.gamma_n(-1) == -one
    assert lc.alpha_n(1) == lc.alpha


def test_lattice_constant_recurrences():
    lc = LatticeConstants(FORMAL)
    two_alpha = lc.alpha + lc.alpha
    for n in range(1, 21):
        assert lc.alpha_n(n + 1) == two_alpha * lc.alpha_n(n) - lc.alpha_n(n - 1)
        assert lc.gamma_n(n + 1) == two_alpha * lc.gamma_n(n) - lc.gamma_n(n - 1)


def test_gamma_matches_closed_form_rationally():
    for n in range(-4, 9):
        got = gamma_n(RAT, n)
        h = U0 ** 2
        want = (h ** n - h ** (-n)) / (h - 1 / h) if n else Fraction(0)
        assert got == want


# -- D_q on monomials ------------------------------------------------------------


def test_dq_constant_and_x():
    assert dq(xp(5)).is_zero()
    assert dq(XPoly.x(FORMAL)) == XPoly.one(FORMAL)


def test_dq_x_squared():
    out = dq(XPoly.x_power(FORMAL, 2))
    gamma2 = Scalar.u_pow(2) + Scalar.u_pow(-2)
    assert out == XPoly(FORMAL, [FORMAL.zero, gamma2])
    assert gamma_n(FORMAL, 2) == gamma2


def test_dq_x_cubed():
    out = dq(XPoly.x_power(FORMAL, 3))
    g1, g3 = gamma_n(FORMAL, 1), gamma_n(FORMAL, 3)
    quarter = Scalar.from_fraction(Fraction(1, 4))
    assert out.coeff(2) == g3
    assert out.coeff(1) == FORMAL.zero
    assert out.coeff(0) == (g1 + g1 + g1 - g3) * quarter
    # frozen values at q = 1/4
    q0 = Fraction(1, 4)
    assert eval_q(out.coeff(2), q0) == Fraction(21, 4)
    assert eval_q(out.coeff(0), q0) == Fraction(-9, 16)


def test_dq_degree_drop():
    f = xp(3, -1, 2, 7, 5)
    assert dq(f).degree == f.degree - 1


# -- S_q on monomials -------------------------------------------------------------


def test_sq_low_degrees():
    assert sq(XPoly.one(FORMAL)) == XPoly.one(FORMAL)
    assert sq(XPoly.x(FORMAL)) == XPoly(FORMAL, [FORMAL.zero, alpha(FORMAL)])
    out = sq(XPoly.x_power(FORMAL, 2))
    a2 = alpha_n(FORMAL, 2)
    half = Scalar.from_fraction(Fraction(1, 2))
    assert out.coeff(2) == a2
    assert out.coeff(0) == (FORMAL.one - a2) * half
    assert out.coeff(1) == FORMAL.zero


def test_sq_preserves_degree_with_alpha_leading():
    for n in range(0, 16):
        out = sq(XPoly.x_power(FORMAL, n))
        assert out.degree == n
        assert out.leading() == alpha_n(FORMAL, n)


# -- independent difference-quotient oracle ------------------------------------------


@given(frac_vectors)
@settings(max_examples=40, deadline=None)
def test_operators_match_difference_quotient(coeffs):
    f = XPoly(RAT, [Fraction(c) for c in coeffs])
    df, sf = dq(f), sq(f)
    h = U0 ** 2
    for w in (Fraction(2), Fraction(3, 2), Fraction(5, 7)):
        x, d_expect, s_expect = oracle_points(list(f.coefficients()), h, w)
        assert df.eval_at(x) == d_expect
        assert sf.eval_at(x) == s_expect


def test_formal_operators_match_oracle_after_substitution():
    f = xp(Fraction(1, 3), -2, 0, 5, Fraction(7, 2))
    df = dq(f)
    h = U0 ** 2
    coeffs = [c.eval_at(U0) for c in f.coefficients()]
    for w in (Fraction(3), Fraction(4, 5)):
        x, d_expect, _ = oracle_points(coeffs, h, w)
        got = frac_poly_eval([c.eval_at(U0) for c in df.coefficients()], x)
        assert got == d_expect


# -- product rules and linearity -------------------------------------------------------


@given(frac_vectors, frac_vectors)
@settings(max_examples=25, deadline=None)
def test_product_rules(fc, gc):
    f = XPoly(RAT, [Fraction(c) for c in fc])
    g = XPoly(RAT, [Fraction(c) for c in gc])
    lhs_d = dq(f * g)
    rhs_d = dq(f) * sq(g) + sq(f) * dq(g)
    assert lhs_d == rhs_d
    lhs_s = sq(f * g)
    rhs_s = dq(f) * dq(g) * u2_poly(RAT) + sq(f) * sq(g)
    assert lhs_s == rhs_s


def test_product_rules_formal_spot():
    f = xp(1, 0, Fraction(-1, 2), 1)
    g = xp(Fraction(2, 3), 1)
    assert dq(f * g) == dq(f) * sq(g) + sq(f) * dq(g)
    assert sq(f * g) == dq(f) * dq(g) * u2_poly(FORMAL) + sq(f) * sq(g)


@given(frac_vectors, frac_vectors, small_fracs)
@settings(max_examples=25, deadline=None)
def test_linearity(fc, gc, lam):
    f = XPoly(RAT, [Fraction(c) for c in fc])
    g = XPoly(RAT, [Fraction(c) for c in gc])
    for op in (dq, sq):
        assert op(f + g.scale(lam)) == op(f) + op(g).scale(lam)


# -- U2 and the power expansion ----------------------------------------------------------


def test_u2_poly_shape():
    u2 = u2_poly(FORMAL)
    a = alpha(FORMAL)
    assert u2.coeff(2) == a * a - FORMAL.one
    assert u2.eval_at(FORMAL.one) == FORMAL.zero
    assert u2.eval_at(-FORMAL.one) == FORMAL.zero
    # the leading coefficient vanishes at u = 1 (q = 1 collapses the lattice)
    assert u2.coeff(2).num.eval_at(1) == 0


def test_dq_power_leading_small():
    assert dq_power_leading(FORMAL, 1) == (FORMAL.one, FORMAL.zero)
    g2, s2 = dq_power_leading(FORMAL, 2)
    assert g2 == gamma_n(FORMAL, 2) and s2 == FORMAL.zero
    g3, s3 = dq_power_leading(FORMAL, 3)
    q = Fraction(1, 4)
    assert eval_q(g3, q) == Fraction(21, 4) and eval_q(s3, q) == Fraction(-9, 16)


@pytest.mark.parametrize("n", range(0, 16))
def test_dq_power_leading_matches_operator(n):
    out = dq(XPoly.x_power(FORMAL, n))
    top, second = dq_power_leading(FORMAL, n)
    assert out.coeff(n - 1) == top if n >= 1 else out.is_zero()
    if n >= 3:
        assert out.coeff(n - 3) == second
    else:
        assert second == FORMAL.zero
