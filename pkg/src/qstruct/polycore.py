"""Polynomials in the lattice variable and their Laurent counterparts.

The lattice substitution x = (z + 1/z)/2 turns a polynomial f(x) into a
palindromic Laurent polynomial f((z + 1/z)/2) in z; the divided-difference
operators act by the half-step substitutions z -> q^(1/2) z and
z -> q^(-1/2) z at the Laurent level.  This module provides

  * :class:`XPoly`        -- dense polynomials in x over a coefficient domain,
  * :class:`LaurentPoly`  -- sparse two-sided polynomials in z,
  * :func:`to_laurent` / :func:`from_laurent` -- the exact conversion pair,
  * :func:`half_shift`    -- the substitution z -> q^(+-1/2) z,
  * :class:`MonicBasis` and :func:`expand_in_basis` -- expansion of a
    polynomial in a monic degree-graded basis.

Palindromicity of every Laurent value produced by operator algebra is not
assumed: :func:`from_laurent` re-checks it and raises, which is the main
internal consistency oracle of the package.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .exactnum import ParseError, parse_expression

__all__ = [
    "XPoly",
    "LaurentPoly",
    "MonicBasis",
    "PalindromeError",
    "BasisError",
    "to_laurent",
    "from_laurent",
    "half_shift",
    "expand_in_basis",
    "parse_xpoly",
]


class PalindromeError(ValueError):
    """A Laurent polynomial expected to be palindromic is not."""


class BasisError(ValueError):
    """A monic basis is malformed or too short for the requested expansion."""


class XPoly:
    """Dense polynomial in x with coefficients in an evaluation domain."""

    __slots__ = ("dom", "_c")

    def __init__(self, dom, coefficients: Iterable = ()):
        self.dom = dom
        c = list(coefficients)
        while c and dom.is_zero(c[-1]):
            c.pop()
        self._c = tuple(c)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, dom) -> "XPoly":
        return cls(dom)

    @classmethod
    def one(cls, dom) -> "XPoly":
        return cls(dom, [dom.one])

    @classmethod
    def constant(cls, dom, value) -> "XPoly":
        return cls(dom, [value])

    @classmethod
    def x(cls, dom) -> "XPoly":
        return cls(dom, [dom.zero, dom.one])

    @classmethod
    def x_power(cls, dom, n: int) -> "XPoly":
        return cls(dom, [dom.zero] * n + [dom.one])

    # -- structure -----------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, k: int):
        if 0 <= k < len(self._c):
            return self._c[k]
        return self.dom.zero

    def coefficients(self) -> tuple:
        return self._c

    def leading(self):
        return self._c[-1] if self._c else self.dom.zero

    def is_monic(self) -> bool:
        return bool(self._c) and self.dom.is_zero(self._c[-1] - self.dom.one)

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "XPoly"):
        if self.dom != other.dom:
            raise ValueError("mixed coefficient domains")

    def _coerce(self, other):
        if isinstance(other, XPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return XPoly.constant(self.dom, self.dom.from_fraction(other))
        return NotImplemented

    def __add__(self, other) -> "XPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, y in enumerate(b):
            c[i] = c[i] + y
        return XPoly(self.dom, c)

    def __radd__(self, other) -> "XPoly":
        return self.__add__(other)

    def __neg__(self) -> "XPoly":
        return XPoly(self.dom, [-x for x in self._c])

    def __sub__(self, other) -> "XPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "XPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __rmul__(self, other) -> "XPoly":
        return self.__mul__(other)

    def __mul__(self, other) -> "XPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        if not self._c or not other._c:
            return XPoly(self.dom)
        out = [self.dom.zero] * (len(self._c) + len(other._c) - 1)
        for i, x in enumerate(self._c):
            if self.dom.is_zero(x):
                continue
            for j, y in enumerate(other._c):
                out[i + j] = out[i + j] + x * y
        return XPoly(self.dom, out)

    def __pow__(self, n: int) -> "XPoly":
        if n < 0:
            if self.degree == 0:
                return XPoly.constant(self.dom, self.dom.one / self._c[0] ** (-n))
            raise ValueError("negative power of a non-constant polynomial")
        result = XPoly.one(self.dom)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other) -> "XPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.degree != 0:
            raise ValueError("XPoly division only by nonzero constants")
        return self.scale(self.dom.one / other._c[0])

    def scale(self, factor) -> "XPoly":
        if self.dom.is_zero(factor):
            return XPoly(self.dom)
        return XPoly(self.dom, [x * factor for x in self._c])

    def mul_x_minus(self, b) -> "XPoly":
        """(x - b) * self, the hot step of three-term recurrences."""
        c = [self.dom.zero] + list(self._c)
        for i, y in enumerate(self._c):
            c[i] = c[i] - b * y
        return XPoly(self.dom, c)

    def eval_at(self, x0):
        acc = self.dom.zero
        for c in reversed(self._c):
            acc = acc * x0 + c
        return acc

    # -- comparison / display ----------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, XPoly) and self.dom == other.dom and self._c == other._c

    def __hash__(self) -> int:
        return hash((self.dom, self._c))

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if self.dom.is_zero(c):
                continue
            cs = self.dom.to_display(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if k == 0:
                term = cs
            else:
                xk = "x" if k == 1 else f"x^{k}"
                if cs == "1":
                    term = xk
                else:
                    if any(op in cs for op in "+-*/") and not (cs.isdigit()):
                        cs = f"({cs})"
                    term = f"{cs}*{xk}"
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append((" - " if neg else " + ") + term)
        return "".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"XPoly[{self.dom.name}]({str(self)!r})"


class LaurentPoly:
    """Sparse Laurent polynomial in z over a coefficient domain.

    Canonical form drops zero coefficients; an empty support is the zero
    polynomial.
    """

    __slots__ = ("dom", "_c")

    def __init__(self, dom, coeffs: dict | None = None):
        self.dom = dom
        if coeffs:
            self._c = {k: v for k, v in coeffs.items() if not dom.is_zero(v)}
        else:
            self._c = {}

    @property
    def support(self) -> tuple:
        return tuple(sorted(self._c))

    def coeff(self, k: int):
        return self._c.get(k, self.dom.zero)

    def items(self):
        return self._c.items()

    def is_zero(self) -> bool:
        return not self._c

    def max_exp(self) -> int:
        return max(self._c) if self._c else 0

    def is_palindromic(self) -> bool:
        """coefficient(k) == coefficient(-k) for the whole support."""
        for k, v in self._c.items():
            if not self.dom.is_zero(v - self._c.get(-k, self.dom.zero)):
                return False
        return True

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c[k] + v if k in c else v
        return LaurentPoly(self.dom, c)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.dom, {k: -v for k, v in self._c.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict = {}
        for i, x in self._c.items():
            for j, y in other._c.items():
                k = i + j
                p = x * y
                out[k] = out[k] + p if k in out else p
        return LaurentPoly(self.dom, out)

    def scale(self, factor) -> "LaurentPoly":
        return LaurentPoly(self.dom, {k: v * factor for k, v in self._c.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.dom == other.dom
            and self._c == other._c
        )

    def __str__(self) -> str:
        if not self._c:
            return "0"
        return " + ".join(
            f"({self.dom.to_display(v)})*z^{k}" for k, v in sorted(self._c.items())
        )

    def __repr__(self) -> str:
        return f"LaurentPoly[{self.dom.name}]({str(self)!r})"


# --------------------------------------------------------------------------
# conversion between the two pictures
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _x_power_laurent(m: int) -> tuple:
    """((z + 1/z)/2)^m as ((exponent, Fraction), ...); domain independent."""
    if m == 0:
        return ((0, Fraction(1)),)
    prev = _x_power_laurent(m - 1)
    acc: dict = {}
    for k, c in prev:
        h = c / 2
        acc[k + 1] = acc.get(k + 1, Fraction(0)) + h
        acc[k - 1] = acc.get(k - 1, Fraction(0)) + h
    return tuple(sorted((k, c) for k, c in acc.items() if c))


def to_laurent(f: XPoly) -> LaurentPoly:
    """Substitute x = (z + 1/z)/2; the result is always palindromic."""
    dom = f.dom
    acc: dict = {}
    for m, cm in enumerate(f.coefficients()):
        if dom.is_zero(cm):
            continue
        for k, frac in _x_power_laurent(m):
            term = cm * dom.from_fraction(frac)
            acc[k] = acc[k] + term if k in acc else term
    return LaurentPoly(dom, acc)


def from_laurent(g: LaurentPoly) -> XPoly:
    """Invert :func:`to_laurent`; raises :class:`PalindromeError` otherwise."""
    dom = g.dom
    if not g.is_palindromic():
        bad = [k for k in g.support if not dom.is_zero(g.coeff(k) - g.coeff(-k))]
        raise PalindromeError(f"not palindromic at exponents {bad}")
    work = dict(g.items())
    if not work:
        return XPoly(dom)
    coeffs = [dom.zero] * (g.max_exp() + 1)
    for m in range(g.max_exp(), 0, -1):
        cm = work.get(m)
        if cm is None or dom.is_zero(cm):
            continue
        # top coefficient of ((z+1/z)/2)^m is 2^-m
        c = cm * dom.from_fraction(Fraction(2) ** m)
        coeffs[m] = c
        for k, frac in _x_power_laurent(m):
            work[k] = work.get(k, dom.zero) - c * dom.from_fraction(frac)
    coeffs[0] = work.get(0, dom.zero)
    work[0] = dom.zero
    leftovers = [k for k, v in work.items() if not dom.is_zero(v)]
    if leftovers:
        raise PalindromeError(f"inconsistent Laurent input at exponents {sorted(leftovers)}")
    return XPoly(dom, coeffs)


def half_shift(g: LaurentPoly, direction: int) -> LaurentPoly:
    """Substitute z -> q^(1/2) z (direction +1) or z -> q^(-1/2) z (-1).

    The coefficient at exponent k picks up the factor u^(+-2k).
    """
    if direction not in (+1, -1):
        raise ValueError("direction must be +1 or -1")
    dom = g.dom
    return LaurentPoly(dom, {k: v * dom.u_power(2 * k * direction) for k, v in g.items()})


# --------------------------------------------------------------------------
# monic bases
# --------------------------------------------------------------------------


class MonicBasis:
    """A degree-graded monic basis: entry k is monic of degree exactly k."""

    __slots__ = ("dom", "_polys")

    def __init__(self, polys: Sequence[XPoly]):
        polys = tuple(polys)
        if not polys:
            raise BasisError("empty basis")
        self.dom = polys[0].dom
        for k, p in enumerate(polys):
            if p.dom != self.dom:
                raise BasisError("mixed domains in basis")
            if p.degree != k:
                raise BasisError(f"basis entry {k} has degree {p.degree}")
            if not p.is_monic():
                raise BasisError(f"basis entry {k} is not monic")
        self._polys = polys

    def __len__(self) -> int:
        return len(self._polys)

    def __getitem__(self, k: int) -> XPoly:
        return self._polys[k]

    def __iter__(self):
        return iter(self._polys)

    @property
    def max_degree(self) -> int:
        return len(self._polys) - 1


def expand_in_basis(f: XPoly, basis: MonicBasis) -> list:
    """Coefficients of f in the basis, from degree 0 up to deg f.

    Triangular back-substitution from the top degree; exact because every
    basis entry is monic.
    """
    if f.degree > basis.max_degree:
        raise BasisError(f"degree {f.degree} exceeds basis degree {basis.max_degree}")
    dom = f.dom
    if f.is_zero():
        return []
    out = [dom.zero] * (f.degree + 1)
    rest = f
    for k in range(f.degree, -1, -1):
        c = rest.coeff(k)
        out[k] = c
        if not dom.is_zero(c):
            rest = rest - basis[k].scale(c)
        if rest.degree >= k:
            # cannot happen for a valid monic basis
            raise BasisError(f"degree failed to drop at {k}")
    return out


def parse_xpoly(text: str, dom) -> XPoly:
    """Parse a polynomial in x with u-scalar coefficients, e.g. ``x^2 - 1/2``."""
    names = {
        "x": XPoly.x(dom),
        "u": XPoly.constant(dom, dom.u_power(1)),
    }
    val = parse_expression(text, names)
    if isinstance(val, (int, Fraction)):
        return XPoly.constant(dom, dom.from_fraction(val))
    if isinstance(val, XPoly):
        return val
    raise ParseError(f"{text!r} does not denote a polynomial in x")
