"""The divided-difference operator D_q and the averaging operator S_q.

Both operators act on polynomials in x through the lattice substitution
x = (z + 1/z)/2 with z = q^s:

    D_q f:  [f_hat(q^(1/2) z) - f_hat(q^(-1/2) z)] / [(u^2 - u^-2)(z - 1/z)/2]
    S_q f:  [f_hat(q^(1/2) z) + f_hat(q^(-1/2) z)] / 2

where f_hat(z) = f((z + 1/z)/2).  D_q lowers the degree by one, S_q
preserves it and multiplies the leading coefficient by the lattice constant
alpha_n.  The z = q^s route keeps everything inside exact Laurent
arithmetic; the denominator division is a telescoping pass whose remainder
is checked, and palindromicity of each intermediate quotient is verified
before conversion back to x.

Lattice constants:

    alpha   = (q^(1/2) + q^(-1/2)) / 2
    alpha_n = (q^(n/2) + q^(-n/2)) / 2
    gamma_n = (q^(n/2) - q^(-n/2)) / (q^(1/2) - q^(-1/2))

with the two-term recurrences y_(n+1) = 2*alpha*y_n - y_(n-1) satisfied by
both families.  The closed forms are used directly, so negative indices are
meaningful (gamma_(-1) = -1).
"""

from __future__ import annotations

from fractions import Fraction

from .polycore import LaurentPoly, XPoly, from_laurent, half_shift, to_laurent

__all__ = [
    "OperatorConsistencyError",
    "LatticeConstants",
    "alpha",
    "alpha_n",
    "gamma_n",
    "dq",
    "sq",
    "u2_poly",
    "dq_power_leading",
]


class OperatorConsistencyError(ArithmeticError):
    """Internal operator algebra produced an impossible intermediate value.

    Unreachable for polynomial inputs unless the package itself is broken;
    raised instead of silently returning garbage.
    """


# --------------------------------------------------------------------------
# lattice constants
# --------------------------------------------------------------------------


def alpha(dom):
    """(q^(1/2) + q^(-1/2)) / 2."""
    return (dom.u_power(2) + dom.u_power(-2)) * dom.from_fraction(Fraction(1, 2))


def alpha_n(dom, n: int):
    """(q^(n/2) + q^(-n/2)) / 2 for any integer n."""
    return (dom.u_power(2 * n) + dom.u_power(-2 * n)) * dom.from_fraction(Fraction(1, 2))


def gamma_n(dom, n: int):
    """(q^(n/2) - q^(-n/2)) / (q^(1/2) - q^(-1/2)) for any integer n.

    Built as the balanced geometric sum u^(1-n) * (1 + u^2 + ... + u^(2n-2))
    shifted to u^(2-2n) * sum u^(4k), which avoids any polynomial division.
    """
    if n == 0:
        return dom.zero
    if n < 0:
        return -gamma_n(dom, -n)
    acc = dom.zero
    for k in range(n):
        acc = acc + dom.u_power(4 * k + 2 - 2 * n)
    return acc


class LatticeConstants:
    """Bundled accessors for alpha, alpha_n and gamma_n over one domain."""

    __slots__ = ("dom",)

    def __init__(self, dom):
        self.dom = dom

    @property
    def alpha(self):
        return alpha(self.dom)

    def alpha_n(self, n: int):
        return alpha_n(self.dom, n)

    def gamma_n(self, n: int):
        return gamma_n(self.dom, n)


# --------------------------------------------------------------------------
# the operators
# --------------------------------------------------------------------------


def _div_z_minus_zinv(num: LaurentPoly) -> LaurentPoly:
    """Exact Laurent division by (z - 1/z), telescoping from the top exponent.

    Requires num to be divisible (it is antipalindromic for every operator
    numerator); the reconstruction check raises otherwise.
    """
    dom = num.dom
    if num.is_zero():
        return num
    m = max(abs(k) for k in num.support)
    # coefficient equation: num[j] = h[j-1] - h[j+1], solved top-down
    h: dict = {}
    for j in range(m, -m, -1):
        h[j - 1] = num.coeff(j) + h.get(j + 1, dom.zero)
    bottom = num.coeff(-m) + h.get(-m + 1, dom.zero)
    if not dom.is_zero(bottom):
        raise OperatorConsistencyError("nonzero remainder dividing by (z - 1/z)")
    quot = LaurentPoly(dom, h)
    if not (LaurentPoly(dom, {1: dom.one, -1: -dom.one}) * quot - num).is_zero():
        raise OperatorConsistencyError("bad quotient dividing by (z - 1/z)")
    return quot


def dq(f: XPoly) -> XPoly:
    """Askey-Wilson divided difference of f; degree drops by exactly one."""
    dom = f.dom
    if f.degree <= 0:
        return XPoly.zero(dom)
    g = to_laurent(f)
    num = half_shift(g, +1) - half_shift(g, -1)
    quot = _div_z_minus_zinv(num)
    p = from_laurent(quot)
    # remaining factor of the lattice denominator: (u^2 - u^-2)/2
    factor = dom.from_fraction(2) / (dom.u_power(2) - dom.u_power(-2))
    return p.scale(factor)


def sq(f: XPoly) -> XPoly:
    """Averaging operator: mean of the two half-step shifts of f."""
    dom = f.dom
    if f.degree <= 0:
        return f
    g = to_laurent(f)
    s = (half_shift(g, +1) + half_shift(g, -1)).scale(dom.from_fraction(Fraction(1, 2)))
    return from_laurent(s)


def u2_poly(dom) -> XPoly:
    """The fixed polynomial (alpha^2 - 1)(x^2 - 1) from the S_q product rule."""
    a = alpha(dom)
    c = a * a - dom.one
    return XPoly(dom, [-c, dom.zero, c])


def dq_power_leading(dom, n: int):
    """Top two coefficients of D_q x^n: (gamma_n, (n*gamma_(n-2) - (n-2)*gamma_n)/4).

    The second entry multiplies x^(n-3); for n <= 2 it is 0 by the closed
    form (gamma extends to negative indices as gamma_(-k) = -gamma_k).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    g_n = gamma_n(dom, n)
    second = (
        dom.from_fraction(n) * gamma_n(dom, n - 2) - dom.from_fraction(n - 2) * g_n
    ) * dom.from_fraction(Fraction(1, 4))
    return g_n, second
