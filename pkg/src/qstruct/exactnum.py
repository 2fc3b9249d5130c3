"""Exact arithmetic in the coefficient field Q(u).

The formal indeterminate u stands for the fourth root of the deformation
parameter q, so that q = u^4, q^(1/2) = u^2 and q^(1/4) = u are all exact
monomials.  Every coefficient appearing elsewhere in the package (lattice
constants, recurrence coefficients, structure-relation coefficients) lives
in this field.

Two layers:

  * :class:`UPoly` -- dense polynomials in u over Q.  Internally stored as
    an integer coefficient vector plus one positive integer denominator,
    with gcd(content, denominator) = 1; this keeps addition denominator-free
    on the common all-integer path and lets multiplication run through a
    Kronecker-substitution big-integer product.
  * :class:`Scalar` -- reduced fractions of UPolys with a monic denominator.
    Negative powers of u (q^(-n/2) and friends) are Scalars whose
    denominator is a monomial.

All values are immutable and hashable; every operation is pure.

The module also provides the three evaluation domains used by the rest of
the package: :class:`FormalDomain` (exact in Q(u)), :class:`RationalDomain`
(exact at a rational u0) and :class:`FloatDomain` (floating point with a
zero-test tolerance).
"""

from __future__ import annotations

import ast
import math
import warnings
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "Rational",
    "UPoly",
    "Scalar",
    "ScalarDivisionError",
    "PoleError",
    "ParseError",
    "scalar_arith",
    "scalar_eval",
    "parse_scalar",
    "FormalDomain",
    "RationalDomain",
    "FloatDomain",
    "FORMAL",
]

# Arbitrary-precision rationals: numerator/denominator normalized with
# denominator > 0 and gcd = 1, zero stored as 0/1.  The stdlib type already
# maintains exactly these invariants.
Rational = Fraction


class ScalarDivisionError(ZeroDivisionError):
    """Division by the zero element of Q(u)."""


class PoleError(ZeroDivisionError):
    """Evaluation of a Scalar at a zero of its denominator."""


class ParseError(ValueError):
    """Malformed textual input for a Scalar or polynomial."""


# --------------------------------------------------------------------------
# integer coefficient-vector helpers
# --------------------------------------------------------------------------

_SCHOOLBOOK_CUTOFF = 4096  # max nnz(a) * nnz(b) handled without packing


def _strip(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _vec_content(c: Sequence[int], seed: int = 0) -> int:
    g = seed
    for x in c:
        if x:
            g = math.gcd(g, x)
            if g == 1:
                return 1
    return g


def _mul_schoolbook(a: Sequence[int], b: Sequence[int]) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _mul_kronecker(a: Sequence[int], b: Sequence[int]) -> list:
    # Pack both vectors into single integers at a base wide enough that the
    # product's balanced digits cannot overlap, multiply once, unpack.
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    bits = bound.bit_length() + 2
    va = 0
    shift = 0
    for x in a:
        va += x << shift
        shift += bits
    vb = 0
    shift = 0
    for x in b:
        vb += x << shift
        shift += bits
    v = va * vb
    n = len(a) + len(b) - 1
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    out = []
    for _ in range(n):
        digit = v & mask
        if digit >= half:
            digit -= mask + 1
        out.append(digit)
        v = (v - digit) >> bits
    if v:
        raise AssertionError("kronecker unpack left a nonzero carry")
    return out


def _vec_mul(a: Sequence[int], b: Sequence[int]) -> list:
    if not a or not b:
        return []
    nnz_a = sum(1 for x in a if x)
    nnz_b = sum(1 for x in b if x)
    if nnz_a * nnz_b <= _SCHOOLBOOK_CUTOFF:
        return _mul_schoolbook(a, b)
    return _mul_kronecker(a, b)


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder of integer vectors, deg a >= deg b >= 0."""
    a = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for i, y in enumerate(b):
            a[shift + i] -= la * y
        _strip(a)
    return a


def _int_gcd_poly(a: list, b: list) -> list:
    """Primitive gcd of integer vectors via the primitive PRS."""

    def primitive(c: list) -> list:
        g = _vec_content(c)
        if g > 1:
            c = [x // g for x in c]
        if c and c[-1] < 0:
            c = [-x for x in c]
        return c

    a, b = primitive(list(a)), primitive(list(b))
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = primitive(_prem(a, b))
        if not r:
            return b
        a, b = b, r
    return [1]  # nonzero constant remainder: coprime


class UPoly:
    """Polynomial in u with rational coefficients.

    Stored as ``(c[0] + c[1]*u + ... + c[d]*u^d) / den`` with integer c[i],
    integer den > 0, no trailing zero coefficient, and gcd(content, den) = 1.
    The zero polynomial is the empty vector over denominator 1.
    """

    __slots__ = ("_c", "_d")

    def __init__(self, coefficients: Iterable[Union[Rational, int]] = ()):
        fracs = [Fraction(c) for c in coefficients]
        den = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        ints = [int(f * den) for f in fracs]
        self._c, self._d = self._normalize(ints, den)

    @classmethod
    def _raw(cls, c: tuple, d: int) -> "UPoly":
        p = object.__new__(cls)
        p._c = c
        p._d = d
        return p

    @classmethod
    def _make(cls, ints: list, den: int) -> "UPoly":
        return cls._raw(*cls._normalize(ints, den))

    @staticmethod
    def _normalize(ints: list, den: int) -> tuple:
        if den == 0:
            raise ZeroDivisionError("zero denominator in UPoly")
        _strip(ints)
        if not ints:
            return (), 1
        if den < 0:
            den = -den
            ints = [-x for x in ints]
        if den != 1:
            g = _vec_content(ints, den)
            if g > 1:
                ints = [x // g for x in ints]
                den //= g
        return tuple(ints), den

    @classmethod
    def from_int(cls, k: int) -> "UPoly":
        return cls._raw((k,), 1) if k else cls._raw((), 1)

    @classmethod
    def monomial(cls, k: int, coeff: Union[Rational, int] = 1) -> "UPoly":
        if k < 0:
            raise ValueError("UPoly exponents are nonnegative; use Scalar for u^-k")
        f = Fraction(coeff)
        if not f:
            return _UP_ZERO
        return cls._make([0] * k + [f.numerator], f.denominator)

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def is_one(self) -> bool:
        return self._c == (1,) and self._d == 1

    def coeff(self, k: int) -> Rational:
        if 0 <= k < len(self._c):
            return Fraction(self._c[k], self._d)
        return Fraction(0)

    def coefficients(self) -> tuple:
        """Coefficient sequence as Rationals, index k = coefficient of u^k."""
        return tuple(Fraction(x, self._d) for x in self._c)

    def leading(self) -> Rational:
        return Fraction(self._c[-1], self._d) if self._c else Fraction(0)

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient (0 for the zero polynomial)."""
        for i, x in enumerate(self._c):
            if x:
                return i
        return 0

    def is_monomial(self) -> bool:
        return bool(self._c) and all(x == 0 for x in self._c[:-1])

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "UPoly") -> "UPoly":
        if not isinstance(other, UPoly):
            return NotImplemented
        a, b = self, other
        if a._d == b._d:
            ints = [x + y for x, y in zip(a._c, b._c)]
            longer = a._c if len(a._c) > len(b._c) else b._c
            ints.extend(longer[len(ints):])
            if a._d == 1:
                _strip(ints)
                return self._raw(tuple(ints), 1)
            return self._make(ints, a._d)
        L = math.lcm(a._d, b._d)
        ma, mb = L // a._d, L // b._d
        ints = [x * ma for x in a._c]
        if len(ints) < len(b._c):
            ints.extend([0] * (len(b._c) - len(ints)))
        for i, y in enumerate(b._c):
            ints[i] += y * mb
        return self._make(ints, L)

    def __neg__(self) -> "UPoly":
        return self._raw(tuple(-x for x in self._c), self._d)

    def __sub__(self, other: "UPoly") -> "UPoly":
        if not isinstance(other, UPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "UPoly") -> "UPoly":
        if not isinstance(other, UPoly):
            return NotImplemented
        if not self._c or not other._c:
            return _UP_ZERO
        ints = _vec_mul(self._c, other._c)
        den = self._d * other._d
        if den == 1:
            return self._raw(tuple(ints), 1)
        return self._make(ints, den)

    def __pow__(self, n: int) -> "UPoly":
        if n < 0:
            raise ValueError("negative power of a UPoly; use Scalar")
        result = _UP_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, f: Union[Rational, int]) -> "UPoly":
        f = Fraction(f)
        if not f:
            return _UP_ZERO
        return self._make([x * f.numerator for x in self._c], self._d * f.denominator)

    def shift(self, k: int) -> "UPoly":
        """Multiply by u^k, k >= 0."""
        if not self._c:
            return self
        return self._raw((0,) * k + self._c, self._d)

    def shift_down(self, k: int) -> "UPoly":
        """Exact division by u^k; requires valuation >= k."""
        if not self._c:
            return self
        if any(self._c[:k]):
            raise ValueError("shift_down below the valuation")
        return self._raw(self._c[k:], self._d)

    # -- division and gcd --------------------------------------------------

    def divexact(self, other: "UPoly") -> "UPoly":
        """Exact quotient self / other; raises if the division has a remainder."""
        if other.is_zero():
            raise ZeroDivisionError("UPoly division by zero")
        if self.is_zero():
            return _UP_ZERO
        if other.is_monomial():
            k = other.degree
            return self.shift_down(k).scale(Fraction(other._d, other._c[-1]))
        g = _vec_content(other._c)
        dc = [x // g for x in other._c]
        if abs(dc[-1]) == 1:
            sign = dc[-1]
            if sign < 0:
                dc = [-x for x in dc]
            quot, rem = self._int_synth_div(list(self._c), dc)
            if rem:
                raise ValueError("non-exact UPoly division")
            return self._make(quot, self._d).scale(Fraction(sign * other._d, g))
        # rare non-monic divisor: fall back to Fraction arithmetic
        num = list(self.coefficients())
        div = list(other.coefficients())
        quot = [Fraction(0)] * (len(num) - len(div) + 1)
        for i in range(len(quot) - 1, -1, -1):
            c = num[i + len(div) - 1] / div[-1]
            quot[i] = c
            if c:
                for j, y in enumerate(div):
                    num[i + j] -= c * y
        if any(num[: len(div) - 1]):
            raise ValueError("non-exact UPoly division")
        return UPoly(quot)

    @staticmethod
    def _int_synth_div(num: list, div: list) -> tuple:
        """Synthetic division of integer vectors by a monic integer divisor."""
        dd = len(div) - 1
        if len(num) <= dd:
            return [], num
        quot = [0] * (len(num) - dd)
        for i in range(len(quot) - 1, -1, -1):
            c = num[i + dd]
            quot[i] = c
            if c:
                for j in range(dd + 1):
                    num[i + j] -= c * div[j]
        return quot, _strip(num[:dd])

    @staticmethod
    def gcd(a: "UPoly", b: "UPoly") -> "UPoly":
        """Primitive gcd with positive leading coefficient (1 for coprime inputs)."""
        if a.is_zero() or b.is_zero():
            z = b if a.is_zero() else a
            if z.is_zero():
                return _UP_ZERO
            g = _vec_content(z._c)
            c = tuple(x // g for x in z._c)
            return UPoly._raw(c if c[-1] > 0 else tuple(-x for x in c), 1)
        if a.degree == 0 or b.degree == 0:
            return _UP_ONE
        va, vb = a.valuation(), b.valuation()
        v = min(va, vb)
        ca = a._c[va:] if va else a._c
        cb = b._c[vb:] if vb else b._c
        if len(ca) == 1 or len(cb) == 1:
            g = [1]
        else:
            g = _int_gcd_poly(list(ca), list(cb))
        return UPoly._raw((0,) * v + tuple(g), 1)

    # -- evaluation and display --------------------------------------------

    def eval_at(self, u0: Union[Rational, int]) -> Rational:
        u0 = Fraction(u0)
        acc = Fraction(0)
        for x in reversed(self._c):
            acc = acc * u0 + x
        return acc / self._d

    def __eq__(self, other) -> bool:
        return isinstance(other, UPoly) and self._c == other._c and self._d == other._d

    def __hash__(self) -> int:
        return hash((self._c, self._d))

    def __str__(self) -> str:
        body = _poly_str(self._c)
        if self._d == 1:
            return body
        if len([x for x in self._c if x]) > 1:
            body = "(" + body + ")"
        return f"{body}/{self._d}"

    def __repr__(self) -> str:
        return f"UPoly({str(self)!r})"


def _poly_str(ints: Sequence[int], var: str = "u") -> str:
    if not ints:
        return "0"
    parts = []
    for k in range(len(ints) - 1, -1, -1):
        c = ints[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            term = str(mag)
        else:
            v = var if k == 1 else f"{var}^{k}"
            term = v if mag == 1 else f"{mag}*{v}"
        if not parts:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append(f"{sign}{term}")
    return "".join(parts)


_UP_ZERO = UPoly._raw((), 1)
_UP_ONE = UPoly._raw((1,), 1)


class Scalar:
    """An element of Q(u): a reduced fraction of UPolys with monic denominator.

    Canonical form: gcd(num, den) = 1 over Q, den monic, zero stored as 0/1.
    Equality and hashing act on the canonical form, so Scalars can be used
    directly as exact values in dicts and sets.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, num: Union[UPoly, Rational, int], den: Union[UPoly, Rational, int, None] = None):
        if not isinstance(num, UPoly):
            num = UPoly([Fraction(num)])
        if den is None:
            den = _UP_ONE
        elif not isinstance(den, UPoly):
            den = UPoly([Fraction(den)])
        s = self._canonical(num, den)
        self._num = s._num
        self._den = s._den

    @classmethod
    def _raw(cls, num: UPoly, den: UPoly) -> "Scalar":
        s = object.__new__(cls)
        s._num = num
        s._den = den
        return s

    @classmethod
    def _canonical(cls, num: UPoly, den: UPoly) -> "Scalar":
        if den.is_zero():
            raise ScalarDivisionError("zero denominator in Q(u)")
        if num.is_zero():
            return _SC_ZERO
        if den.is_one():
            return cls._raw(num, _UP_ONE)
        vn, vd = num.valuation(), den.valuation()
        v = min(vn, vd)
        if v:
            num = num.shift_down(v)
            den = den.shift_down(v)
        if den.degree == 0:
            return cls._raw(num.scale(1 / den.leading()), _UP_ONE)
        if not den.is_monomial():
            g = UPoly.gcd(num, den)
            if g.degree > 0:
                num = num.divexact(g)
                den = den.divexact(g)
                if den.degree == 0:
                    return cls._raw(num.scale(1 / den.leading()), _UP_ONE)
        lc = den.leading()
        if lc != 1:
            num = num.scale(1 / lc)
            den = den.scale(1 / lc)
        return cls._raw(num, den)

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_fraction(cls, f: Union[Rational, int]) -> "Scalar":
        f = Fraction(f)
        if not f:
            return _SC_ZERO
        return cls._raw(UPoly._make([f.numerator], f.denominator), _UP_ONE)

    @classmethod
    def u_pow(cls, k: int) -> "Scalar":
        """The monomial u^k for any integer k."""
        if k >= 0:
            return cls._raw(UPoly.monomial(k), _UP_ONE)
        return cls._raw(_UP_ONE, UPoly.monomial(-k))

    @classmethod
    def q_pow(cls, e: Union[Rational, int]) -> "Scalar":
        """q^e = u^(4e) for any quarter-integer exponent e."""
        k = 4 * Fraction(e)
        if k.denominator != 1:
            raise ValueError(f"q^({e}) is not a quarter-integer power")
        return cls.u_pow(k.numerator)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def is_one(self) -> bool:
        return self._num.is_one() and self._den.is_one()

    def is_rational(self) -> bool:
        return self._den.is_one() and self._num.degree <= 0

    @property
    def num(self) -> UPoly:
        return self._num

    @property
    def den(self) -> UPoly:
        return self._den

    def __bool__(self) -> bool:
        return not self._num.is_zero()

    # -- field operations ------------------------------------------------------

    def __add__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        if a._den.is_one() and b._den.is_one():
            s = a._num + b._num
            return _SC_ZERO if s.is_zero() else self._raw(s, _UP_ONE)
        if a._den == b._den:
            return self._canonical(a._num + b._num, a._den)
        return self._canonical(a._num * b._den + b._num * a._den, a._den * b._den)

    def __radd__(self, other) -> "Scalar":
        return self.__add__(other)

    def __neg__(self) -> "Scalar":
        return self._raw(-self._num, self._den)

    def __sub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self._num.is_zero() or other._num.is_zero():
            return _SC_ZERO
        num = self._num * other._num
        if self._den.is_one() and other._den.is_one():
            return self._raw(num, _UP_ONE)
        den = self._den * other._den
        if den.is_monomial():
            v = min(num.valuation(), den.degree)
            if v:
                num = num.shift_down(v)
                den = den.shift_down(v)
            if den.degree == 0:
                return self._raw(num, _UP_ONE)
            return self._raw(num, den)
        return self._canonical(num, den)

    def __rmul__(self, other) -> "Scalar":
        return self.__mul__(other)

    def __truediv__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other._num.is_zero():
            raise ScalarDivisionError("division by the zero Scalar")
        return self._canonical(self._num * other._den, self._den * other._num)

    def __rtruediv__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def inverse(self) -> "Scalar":
        if self._num.is_zero():
            raise ScalarDivisionError("inverse of the zero Scalar")
        return self._canonical(self._den, self._num)

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        result = _SC_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- evaluation ------------------------------------------------------------

    def eval_at(self, u0: Union[Rational, int]) -> Rational:
        """Exact value at u = u0; rejects u0 = 1 and poles, warns outside (0, 1)."""
        u0 = Fraction(u0)
        if u0 == 1:
            raise ValueError("u = 1 (q = 1) degenerates the lattice; evaluation refused")
        if not 0 < u0 < 1:
            warnings.warn(
                f"u0 = {u0} lies outside (0, 1); identities stay formally valid "
                "but this is outside the usual 0 < q < 1 regime",
                stacklevel=2,
            )
        d = self._den.eval_at(u0)
        if d == 0:
            raise PoleError(f"pole at u = {u0}")
        return self._num.eval_at(u0) / d

    # -- comparison / display ----------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        return hash((self._num, self._den))

    def _display_pair(self) -> tuple:
        """Integer-cleared (numerator, denominator) vectors for rendering."""
        nc, nd = self._num._c, self._num._d
        dc, dd = self._den._c, self._den._d
        L = math.lcm(nd, dd)
        N = [x * (L // nd) for x in nc]
        D = [x * (L // dd) for x in dc]
        g = math.gcd(_vec_content(N), _vec_content(D))
        if g > 1:
            N = [x // g for x in N]
            D = [x // g for x in D]
        return N, D

    def __str__(self) -> str:
        if self._num.is_zero():
            return "0"
        N, D = self._display_pair()
        ns = _poly_str(N)
        if len(D) == 1 and D[0] == 1:
            return ns
        ds = _poly_str(D)
        if sum(1 for x in N if x) > 1:
            ns = f"({ns})"
        # the denominator must bind as one factor: allow a bare positive
        # integer or a coefficient-one monomial, parenthesize anything else
        atomic = (len(D) == 1 and D[0] > 0) or (sum(1 for x in D if x) == 1 and D[-1] == 1)
        if not atomic:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"


def _coerce(x) -> Union[Scalar, type(NotImplemented)]:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.from_fraction(x)
    return NotImplemented


_SC_ZERO = Scalar._raw(_UP_ZERO, _UP_ONE)
_SC_ONE = Scalar._raw(_UP_ONE, _UP_ONE)


# --------------------------------------------------------------------------
# operation wrappers
# --------------------------------------------------------------------------

_OPS = {
    "add": Scalar.__add__,
    "sub": Scalar.__sub__,
    "mul": Scalar.__mul__,
    "div": Scalar.__truediv__,
}


def scalar_arith(x: Scalar, y: Scalar, op: str) -> Scalar:
    """Field arithmetic on Scalars; op is one of add, sub, mul, div."""
    try:
        f = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}; expected add/sub/mul/div") from None
    return f(x, y)


def scalar_eval(x: Scalar, u0: Union[Rational, int]) -> Rational:
    """Exact rational value of x at u = u0 (see :meth:`Scalar.eval_at`)."""
    return x.eval_at(u0)


# --------------------------------------------------------------------------
# parsing: integers, u, + - * / ^ (or **), parentheses
# --------------------------------------------------------------------------


def _eval_ast(node, names: dict):
    if isinstance(node, ast.Expression):
        return _eval_ast(node.body, names)
    if isinstance(node, ast.BinOp):
        left = _eval_ast(node.left, names)
        if isinstance(node.op, ast.Pow):
            exp = _eval_ast(node.right, names)
            if not isinstance(exp, int):
                raise ParseError("exponent must be an integer literal")
            if isinstance(left, int):
                left = Fraction(left)
            return left ** exp
        right = _eval_ast(node.right, names)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if isinstance(left, int):
                left = Fraction(left)
            return left / right
        raise ParseError(f"unsupported operator {type(node.op).__name__}")
    if isinstance(node, ast.UnaryOp):
        val = _eval_ast(node.operand, names)
        if isinstance(node.op, ast.USub):
            return -val
        if isinstance(node.op, ast.UAdd):
            return val
        raise ParseError("unsupported unary operator")
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int):
            return node.value
        raise ParseError(f"unsupported literal {node.value!r}")
    if isinstance(node, ast.Name):
        try:
            return names[node.id]
        except KeyError:
            raise ParseError(f"unknown symbol {node.id!r}") from None
    raise ParseError(f"unsupported syntax ({type(node).__name__})")


def parse_expression(text: str, names: dict):
    """Parse an arithmetic expression over the given symbols.

    Supports + - * / with ^ or ** for integer powers.  Bare integers are
    returned as int; mixed arithmetic coerces through the symbol values.
    """
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    try:
        return _eval_ast(tree, names)
    except ZeroDivisionError:
        raise ParseError(f"division by zero in {text!r}") from None


def parse_scalar(text: str) -> Scalar:
    """Parse a Scalar from text, e.g. ``(u^4+1)/(2*u^2)`` or ``-3/4``."""
    val = parse_expression(text, {"u": Scalar.u_pow(1)})
    if isinstance(val, (int, Fraction)):
        return Scalar.from_fraction(val)
    if isinstance(val, Scalar):
        return val
    raise ParseError(f"{text!r} does not denote a Scalar")


# --------------------------------------------------------------------------
# evaluation domains
# --------------------------------------------------------------------------


class FormalDomain:
    """Exact computation in Q(u); the default and authoritative mode."""

    name = "formal"

    zero = _SC_ZERO
    one = _SC_ONE

    def from_fraction(self, f: Union[Rational, int]) -> Scalar:
        return Scalar.from_fraction(f)

    def u_power(self, k: int) -> Scalar:
        return Scalar.u_pow(k)

    def q_power(self, e: Union[Rational, int]) -> Scalar:
        return Scalar.q_pow(e)

    def is_zero(self, x: Scalar) -> bool:
        return x.is_zero()

    def to_display(self, x: Scalar) -> str:
        return str(x)

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalDomain)

    def __hash__(self) -> int:
        return hash("formal")

    def __repr__(self) -> str:
        return "FormalDomain()"


class RationalDomain:
    """Exact computation in Q with u frozen at a rational point of (0, 1)."""

    name = "rational"

    def __init__(self, u0: Union[Rational, int, str]):
        u0 = Fraction(u0)
        if not 0 < u0 < 1:
            raise ValueError(f"rational mode needs 0 < u0 < 1, got {u0}")
        self.u0 = u0
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def from_fraction(self, f: Union[Rational, int]) -> Rational:
        return Fraction(f)

    def u_power(self, k: int) -> Rational:
        return self.u0 ** k

    def q_power(self, e: Union[Rational, int]) -> Rational:
        k = 4 * Fraction(e)
        if k.denominator != 1:
            raise ValueError(f"q^({e}) is not a quarter-integer power")
        return self.u0 ** k.numerator

    def is_zero(self, x: Rational) -> bool:
        return x == 0

    def to_display(self, x: Rational) -> str:
        return str(x)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalDomain) and self.u0 == other.u0

    def __hash__(self) -> int:
        return hash(("rational", self.u0))

    def __repr__(self) -> str:
        return f"RationalDomain({self.u0})"


class FloatDomain:
    """Floating-point cross-check mode; zero tests use an absolute tolerance."""

    name = "float"

    def __init__(self, u0: float, tol: float = 1e-9):
        if not 0.0 < u0 < 1.0:
            raise ValueError(f"float mode needs 0 < u0 < 1, got {u0}")
        if tol <= 0.0:
            raise ValueError("tolerance must be positive")
        self.u0 = float(u0)
        self.tol = float(tol)
        self.zero = 0.0
        self.one = 1.0

    def from_fraction(self, f: Union[Rational, int]) -> float:
        return float(Fraction(f))

    def u_power(self, k: int) -> float:
        return self.u0 ** k

    def q_power(self, e: Union[Rational, int]) -> float:
        return self.u0 ** (4 * float(Fraction(e)))

    def is_zero(self, x: float) -> bool:
        return abs(x) <= self.tol

    def to_display(self, x: float) -> str:
        return repr(x)

    def __eq__(self, other) -> bool:
        return isinstance(other, FloatDomain) and (self.u0, self.tol) == (other.u0, other.tol)

    def __hash__(self) -> int:
        return hash(("float", self.u0, self.tol))

    def __repr__(self) -> str:
        return f"FloatDomain({self.u0}, tol={self.tol})"


FORMAL = FormalDomain()
