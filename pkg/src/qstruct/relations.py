"""Structure-relation extraction and the difference-equation system.

Everything here revolves around relations of the shape

    pi(x) S_q P_n = (a_n x + b_n) P_n + c_n P_(n-1),     deg pi <= 1,

for a monic OPS (P_n) with recurrence coefficients (B_n, C_n):

  * :func:`fit_s_relation` extracts (a_n, b_n, c_n) per n by expanding
    pi * S_q P_n in the family's own basis; the expansion must be supported
    on degrees {n-1, n, n+1}, and a violation is reported as a certificate
    naming the first bad n and the spurious degrees.
  * :func:`verify_s_relation` checks claimed coefficients residually.
  * :func:`dq_five_term_coeffs` / :func:`verify_dq_five_term` convert such a
    relation into the five-term divided-difference relation

        pi(x) U2(x) D_q P_n = r1 P_(n+2) + r2 P_(n+1) + r3 P_n
                              + r4 P_(n-1) + r5 P_(n-2)

    and verify it directly against the polynomials.
  * :func:`system_residuals` evaluates the nonlinear difference-equation
    system that (B_n, C_n, a_n, b_n, c_n) must satisfy -- both the
    contracted equations eq1..eq5 and the expanded ones aux3..aux7.
  * :func:`power_constraints`, :func:`t_fit`, :func:`uniqueness_product`
    and :func:`initial_residuals` cover the leading-coefficient formulas,
    the two-parameter structure of t_n = c_n / C_n, the uniqueness product
    and the low-index initial conditions.

Index conventions: P_(-1) = P_(-2) = 0, C_0 = 0 and c_0 = 0; t_0 is defined
as k1 + k2.  The single extension below index zero is a(-1), taken from the
backward two-term recurrence a(-1) = 2 alpha a(0) - a(1) (both covered
cases, a_n = 0 and a_n = alpha_n, satisfy it); residuals whose stencil
needs anything else below range are reported as "not evaluated".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Callable, Iterable, Optional, Sequence

from .polycore import XPoly, expand_in_basis
from .qcalc import alpha, alpha_n, dq, sq, u2_poly

if TYPE_CHECKING:  # pragma: no cover
    from .families import FamilyInstance, TTRRSpec

__all__ = [
    "RelationCoeffs",
    "FiveTermCoeffs",
    "SystemSequences",
    "ResidualEntry",
    "ResidualReport",
    "StructureFitError",
    "StandingAssumptionError",
    "TStructureError",
    "HorizonError",
    "UnsupportedPiError",
    "fit_s_relation",
    "verify_s_relation",
    "dq_five_term_coeffs",
    "verify_dq_five_term",
    "system_residuals",
    "power_constraints",
    "t_fit",
    "uniqueness_product",
    "initial_residuals",
    "SYSTEM_EQUATIONS",
]


class StructureFitError(ValueError):
    """pi * S_q P_n leaves the three-term window; carries the certificate."""

    def __init__(self, n: int, degrees: Sequence[int]):
        self.n = n
        self.degrees = tuple(degrees)
        super().__init__(
            f"no structure relation: at n = {n} the expansion has nonzero "
            f"coefficients at degrees {list(self.degrees)} outside "
            f"{{n-1, n, n+1}}"
        )


class StandingAssumptionError(ValueError):
    """r_n = t_n + a_n - a_(n-1) vanished where it was required nonzero."""


class TStructureError(ValueError):
    """t_n does not have the k1 q^(n/2) + k2 q^(-n/2) structure."""

    def __init__(self, n: int):
        self.n = n
        super().__init__(f"t-structure violated at n = {n}")


class HorizonError(ValueError):
    """A family instance is too short for the requested check."""


class UnsupportedPiError(ValueError):
    """pi is not in one of the normalized forms (1 or x - c)."""


@dataclass(frozen=True)
class RelationCoeffs:
    """The data (pi; a_n, b_n, c_n) of a structure relation, deg pi <= 1."""

    pi: XPoly
    a: Callable[[int], object]
    b: Callable[[int], object]
    c: Callable[[int], object]

    def __post_init__(self):
        if self.pi.degree > 1:
            raise UnsupportedPiError(f"deg pi = {self.pi.degree} > 1")

    @property
    def dom(self):
        return self.pi.dom


@dataclass(frozen=True)
class FiveTermCoeffs:
    """r1..r5 of the five-term divided-difference relation at one n."""

    r1: object
    r2: object
    r3: object
    r4: object
    r5: object

    def as_tuple(self):
        return (self.r1, self.r2, self.r3, self.r4, self.r5)


# --------------------------------------------------------------------------
# residual reports
# --------------------------------------------------------------------------

PASS = "pass"
FAIL = "fail"
NOT_EVALUATED = "not_evaluated"


def _is_float_dom(dom) -> bool:
    return getattr(dom, "name", "") == "float"


def _float_scale(*items) -> float:
    """Largest coefficient magnitude across XPolys / bare floats, at least 1."""
    m = 1.0
    for it in items:
        vals = it.coefficients() if isinstance(it, XPoly) else (it,)
        for v in vals:
            a = abs(v)
            if a > m:
                m = a
    return m


def _combine(dom, terms):
    """Sum the summands of one identity; in float mode the result is
    normalized by the largest summand so that the reported residual is
    relative (exact modes are unaffected: the sum is returned as is)."""
    acc = dom.zero
    for t in terms:
        acc = acc + t
    if _is_float_dom(dom):
        return acc / _float_scale(*terms)
    return acc


@dataclass(frozen=True)
class ResidualEntry:
    check: str
    n: Optional[int]
    status: str
    residual: object = None

    def display(self, dom) -> str:
        if self.status == NOT_EVALUATED or self.residual is None:
            return "-"
        if isinstance(self.residual, XPoly):
            return str(self.residual)
        return dom.to_display(self.residual)


@dataclass
class ResidualReport:
    """Per-check, per-n residuals with an aggregated verdict."""

    entries: list = field(default_factory=list)

    def add(self, check: str, n: Optional[int], residual, dom) -> None:
        if isinstance(residual, XPoly):
            ok = residual.is_zero()
        else:
            ok = dom.is_zero(residual)
        self.entries.append(ResidualEntry(check, n, PASS if ok else FAIL, residual))

    def add_not_evaluated(self, check: str, n: Optional[int]) -> None:
        self.entries.append(ResidualEntry(check, n, NOT_EVALUATED))

    @property
    def all_zero(self) -> bool:
        return all(e.status != FAIL for e in self.entries)

    @property
    def evaluated(self) -> list:
        return [e for e in self.entries if e.status != NOT_EVALUATED]

    def failures(self) -> list:
        return [e for e in self.entries if e.status == FAIL]

    def extend(self, other: "ResidualReport") -> "ResidualReport":
        self.entries.extend(other.entries)
        return self


# --------------------------------------------------------------------------
# fitting and residual verification of the averaging relation
# --------------------------------------------------------------------------


def fit_s_relation(fam: "FamilyInstance", pi: XPoly, n_max: Optional[int] = None) -> RelationCoeffs:
    """Extract (a_n, b_n, c_n) with pi(x) S_q P_n = (a_n x + b_n) P_n + c_n P_(n-1).

    For each n the product pi * S_q P_n is expanded in the family's own
    monic basis; the relation exists iff the support is inside
    {n-1, n, n+1}, and then the coefficient on P_(n+1) is a_n, on P_n is
    a_n B_n + b_n, and on P_(n-1) is a_n C_n + c_n.  Raises
    :class:`StructureFitError` with the first violating n otherwise.
    """
    if fam.horizon < 2:
        raise HorizonError("need a family horizon of at least 2 to fit")
    if pi.degree > 1:
        raise UnsupportedPiError(f"deg pi = {pi.degree} > 1")
    dom = fam.dom
    if n_max is None:
        n_max = fam.horizon - 1
    if n_max > fam.horizon - 1:
        raise HorizonError(f"n_max = {n_max} needs P_{n_max + 1}; horizon is {fam.horizon}")
    a_tab, b_tab, c_tab = {}, {}, {}
    relative = _is_float_dom(dom)
    for n in range(n_max + 1):
        g = pi * sq(fam.poly(n))
        coeffs = expand_in_basis(g, fam.polys)
        window = {n - 1, n, n + 1}
        if relative:
            cutoff = dom.tol * _float_scale(*coeffs)
            bad = [k for k, v in enumerate(coeffs) if k not in window and abs(v) > cutoff]
        else:
            bad = [k for k, v in enumerate(coeffs) if k not in window and not dom.is_zero(v)]
        if bad:
            raise StructureFitError(n, bad)
        a_n = coeffs[n + 1] if len(coeffs) > n + 1 else dom.zero
        b_n = (coeffs[n] if len(coeffs) > n else dom.zero) - a_n * fam.spec.B(n)
        if n >= 1:
            c_n = coeffs[n - 1] - a_n * fam.spec.C(n)
        else:
            c_n = dom.zero
        a_tab[n], b_tab[n], c_tab[n] = a_n, b_n, c_n
    return RelationCoeffs(
        pi=pi,
        a=lambda n: a_tab[n],
        b=lambda n: b_tab[n],
        c=lambda n: c_tab[n],
    )


def verify_s_relation(fam: "FamilyInstance", rel: RelationCoeffs, n_max: int) -> ResidualReport:
    """Residuals of pi S_q P_n - (a_n x + b_n) P_n - c_n P_(n-1), per n."""
    if n_max > fam.horizon - 1:
        raise HorizonError(f"n_max = {n_max} needs P_{n_max + 1}; horizon is {fam.horizon}")
    dom = fam.dom
    report = ResidualReport()
    relative = _is_float_dom(dom)
    for n in range(n_max + 1):
        lin = XPoly(dom, [rel.b(n), rel.a(n)])
        lhs = rel.pi * sq(fam.poly(n))
        mid = lin * fam.poly(n)
        low = fam.poly(n - 1).scale(rel.c(n))
        residual = lhs - mid - low
        if relative:
            residual = residual.scale(1.0 / _float_scale(lhs, mid, low))
        report.add("s-relation", n, residual, dom)
    return report


# --------------------------------------------------------------------------
# the five-term divided-difference relation
# --------------------------------------------------------------------------


def dq_five_term_coeffs(rel: RelationCoeffs, spec: "TTRRSpec", n: int) -> FiveTermCoeffs:
    """The five coefficients r1..r5 at index n.

    With g_k = b_k + a_k B_k and s_k = c_k + a_k C_k:

        r1 = a_(n+1) - alpha a_n
        r2 = g_(n+1) - alpha g_n + a_n (B_n - alpha B_(n+1))
        r3 = s_(n+1) - alpha s_n + g_n (1 - alpha) B_n
             + a_(n-1) C_n - alpha a_n C_(n+1)
        r4 = (g_(n-1) - alpha g_n) C_n + s_n (B_n - alpha B_(n-1))
        r5 = C_n s_(n-1) - alpha C_(n-1) s_n

    Out-of-range values at n-1, n-2 are zero, with C_0 = 0.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    dom = rel.dom
    zero = dom.zero

    def av(k):
        return rel.a(k) if k >= 0 else zero

    def bv(k):
        return rel.b(k) if k >= 0 else zero

    def cv(k):
        return rel.c(k) if k >= 1 else zero

    def Bv(k):
        return spec.B(k) if k >= 0 else zero

    def Cv(k):
        return spec.C(k) if k >= 1 else zero

    def g(k):
        return bv(k) + av(k) * Bv(k) if k >= 0 else zero

    def s(k):
        return cv(k) + av(k) * Cv(k) if k >= 0 else zero

    al = alpha(dom)
    one = dom.one
    r1 = av(n + 1) - al * av(n)
    r2 = g(n + 1) - al * g(n) + av(n) * (Bv(n) - al * Bv(n + 1))
    r3 = (
        s(n + 1)
        - al * s(n)
        + g(n) * (one - al) * Bv(n)
        + av(n - 1) * Cv(n)
        - al * av(n) * Cv(n + 1)
    )
    r4 = (g(n - 1) - al * g(n)) * Cv(n) + s(n) * (Bv(n) - al * Bv(n - 1))
    r5 = Cv(n) * s(n - 1) - al * Cv(n - 1) * s(n)
    return FiveTermCoeffs(r1, r2, r3, r4, r5)


def verify_dq_five_term(fam: "FamilyInstance", rel: RelationCoeffs, n_max: int) -> ResidualReport:
    """Check pi U2 D_q P_n against the five-term combination for n <= n_max."""
    if fam.horizon < n_max + 2:
        raise HorizonError(f"five-term check at n_max = {n_max} needs horizon >= {n_max + 2}")
    dom = fam.dom
    u2 = u2_poly(dom)
    report = ResidualReport()
    relative = _is_float_dom(dom)
    for n in range(n_max + 1):
        r = dq_five_term_coeffs(rel, fam.spec, n)
        lhs = rel.pi * u2 * dq(fam.poly(n))
        pieces = [
            fam.poly(n + 2).scale(r.r1),
            fam.poly(n + 1).scale(r.r2),
            fam.poly(n).scale(r.r3),
            fam.poly(n - 1).scale(r.r4),
            fam.poly(n - 2).scale(r.r5),
        ]
        rhs = pieces[0]
        for p in pieces[1:]:
            rhs = rhs + p
        residual = lhs - rhs
        if relative:
            residual = residual.scale(1.0 / _float_scale(lhs, *pieces))
        report.add("dq-five-term", n, residual, dom)
    return report


# --------------------------------------------------------------------------
# the nonlinear system on (B, C, a, b, c)
# --------------------------------------------------------------------------


class SystemSequences:
    """Sequence bundle (B, C, a, b, c) with the derived t_n, r_n, k1, k2.

    t_n = c_n / C_n for n >= 1 (requires C_n != 0 there), t_0 = k1 + k2,
    where (k1, k2) solve t_n = k1 q^(n/2) + k2 q^(-n/2) at n = 1, 2:

        k1 = (c_2 C_1 - q^(-1/2) c_1 C_2) / ((q - 1) C_1 C_2)
        k2 = (c_2 C_1 - q^(+1/2) c_1 C_2) / ((q^(-1) - 1) C_1 C_2)

    r_n = t_n + a_n - a_(n-1), extended by a(-1) = 2 alpha a(0) - a(1).
    """

    def __init__(self, dom, B, C, a, b, c, label: str = ""):
        self.dom = dom
        self.label = label
        self._B, self._C, self._a, self._b, self._c = B, C, a, b, c
        self._memo: dict = {}
        self._k = None

    def _seq(self, which: str, f, n: int):
        key = (which, n)
        if key not in self._memo:
            self._memo[key] = f(n)
        return self._memo[key]

    def B(self, n: int):
        if n < 0:
            raise IndexError(f"B({n}) is below range")
        return self._seq("B", self._B, n)

    def C(self, n: int):
        if n == 0:
            return self.dom.zero
        if n < 0:
            raise IndexError(f"C({n}) is below range")
        return self._seq("C", self._C, n)

    def a(self, n: int):
        if n == -1:
            two_alpha = alpha(self.dom) + alpha(self.dom)
            return two_alpha * self.a(0) - self.a(1)
        if n < 0:
            raise IndexError(f"a({n}) is below range")
        return self._seq("a", self._a, n)

    def b(self, n: int):
        if n < 0:
            raise IndexError(f"b({n}) is below range")
        return self._seq("b", self._b, n)

    def c(self, n: int):
        if n == 0:
            return self.dom.zero
        if n < 0:
            raise IndexError(f"c({n}) is below range")
        return self._seq("c", self._c, n)

    # -- derived ---------------------------------------------------------------

    def _k_pair(self):
        if self._k is None:
            dom = self.dom
            C1, C2 = self.C(1), self.C(2)
            if dom.is_zero(C1) or dom.is_zero(C2):
                raise ZeroDivisionError("k1/k2 need C(1) and C(2) nonzero")
            c1, c2 = self.c(1), self.c(2)
            q = dom.q_power(1)
            num1 = c2 * C1 - dom.q_power(Fraction(-1, 2)) * c1 * C2
            num2 = c2 * C1 - dom.q_power(Fraction(1, 2)) * c1 * C2
            k1 = num1 / ((q - dom.one) * C1 * C2)
            k2 = num2 / ((dom.one / q - dom.one) * C1 * C2)
            self._k = (k1, k2)
        return self._k

    @property
    def k1(self):
        return self._k_pair()[0]

    @property
    def k2(self):
        return self._k_pair()[1]

    def t(self, n: int):
        if n == 0:
            return self.k1 + self.k2
        if n < 0:
            raise IndexError(f"t({n}) is below range")
        Cn = self.C(n)
        if self.dom.is_zero(Cn):
            raise ZeroDivisionError(f"t({n}) undefined: C({n}) = 0")
        return self.c(n) / Cn

    def r(self, n: int):
        return self.t(n) + self.a(n) - self.a(n - 1)


def _eq1(s: SystemSequences, n: int):
    al2 = alpha(s.dom) + alpha(s.dom)
    return (s.a(n + 2), -al2 * s.a(n + 1), s.a(n))


def _eq2(s: SystemSequences, n: int):
    al2 = alpha(s.dom) + alpha(s.dom)
    return (s.t(n + 2), -al2 * s.t(n + 1), s.t(n))


def _eq3(s: SystemSequences, n: int):
    return (
        s.r(n + 3) * s.B(n + 2),
        -(s.r(n + 2) + s.r(n + 1)) * s.B(n + 1),
        s.r(n) * s.B(n),
    )


def _eq4(s: SystemSequences, n: int):
    dom = s.dom
    al = alpha(dom)
    quarter = dom.from_fraction(Fraction(1, 4))
    two = dom.from_fraction(2)
    return (
        s.r(n) * (s.B(n) * s.B(n) - two * al * s.B(n) * s.B(n - 1) + s.B(n - 1) * s.B(n - 1)),
        -(s.r(n + 1) + s.r(n + 2)) * (s.C(n + 1) - quarter),
        two * (dom.one + al) * s.r(n) * (s.C(n) - quarter),
        -(s.r(n - 1) + s.r(n - 2)) * (s.C(n - 1) - quarter),
    )


def _eq5(s: SystemSequences, n: int):
    dom = s.dom
    al = alpha(dom)
    one, two = dom.one, dom.from_fraction(2)
    bracket = (
        (two * s.a(n) - s.a(n + 2) - s.a(n - 1)) * s.C(n + 1)
        + (two * s.a(n) - s.a(n + 1) - s.a(n - 2)) * s.C(n)
        + (one - two * al) * (s.c(n) + s.c(n + 1))
        + (al * al - one) * s.a(n)
    )
    return (
        (one - al * al) * s.b(n),
        -two * (one - al) * (s.a(n) * s.B(n) + s.b(n)) * s.B(n) * s.B(n),
        -(s.t(n + 1) + s.a(n + 1) - s.a(n + 2)) * s.B(n + 1) * s.C(n + 1),
        -(s.t(n) + s.a(n - 1) - s.a(n - 2)) * s.B(n - 1) * s.C(n),
        -bracket * s.B(n),
        -two * (s.b(n) - al * s.b(n + 1)) * s.C(n + 1),
        -two * (s.b(n) - al * s.b(n - 1)) * s.C(n),
    )


def _aux3(s: SystemSequences, n: int):
    al2 = alpha(s.dom) + alpha(s.dom)
    return (
        (s.a(n + 1) - s.a(n + 2)) * s.B(n + 1),
        (s.a(n) - s.a(n - 1)) * s.B(n),
        s.b(n + 2),
        -al2 * s.b(n + 1),
        s.b(n),
    )


def _aux4(s: SystemSequences, n: int):
    al2 = alpha(s.dom) + alpha(s.dom)
    return (
        (s.a(n + 1) - s.a(n + 2) - s.t(n + 2)) * s.B(n + 1),
        (s.a(n) - s.a(n - 1) + s.t(n + 1) + s.t(n)) * s.B(n),
        -s.t(n - 1) * s.B(n - 1),
        s.b(n + 1),
        -al2 * s.b(n),
        s.b(n - 1),
    )


def _aux5(s: SystemSequences, n: int):
    dom = s.dom
    al = alpha(dom)
    one, two = dom.one, dom.from_fraction(2)
    return (
        (s.a(n + 1) - s.a(n + 2)) * s.B(n + 1) * s.B(n + 1),
        two * (one - al) * s.a(n) * s.B(n) * s.B(n),
        (s.a(n) - s.a(n - 1)) * s.B(n) * s.B(n + 1),
        (s.a(n) - s.a(n + 2)) * s.C(n + 1),
        (s.b(n + 1) + s.b(n) - two * al * s.b(n + 1)) * s.B(n + 1),
        (s.b(n + 1) + s.b(n) - two * al * s.b(n)) * s.B(n),
        (s.a(n) - s.a(n - 2)) * s.C(n),
        s.c(n + 2),
        -two * al * s.c(n + 1),
        s.c(n),
        -(one - al * al) * s.a(n),
    )


def _aux6(s: SystemSequences, n: int):
    dom = s.dom
    al = alpha(dom)
    one, two = dom.one, dom.from_fraction(2)
    return (
        (two * (one - al) * s.a(n) + s.t(n)) * s.B(n) * s.B(n),
        (s.t(n) + s.a(n - 1) - s.a(n - 2)) * s.B(n - 1) * s.B(n - 1),
        (s.b(n) + s.b(n - 1) - two * al * s.b(n)) * s.B(n),
        (s.a(n) - s.t(n - 1) - s.t(n + 1) - s.a(n + 1)) * s.B(n) * s.B(n - 1),
        (s.b(n - 1) + s.b(n) - two * al * s.b(n - 1)) * s.B(n - 1),
        (s.a(n) - s.a(n + 2) - s.t(n + 2) - s.t(n + 1)) * s.C(n + 1),
        (two * (one + al) * s.t(n) + s.a(n) - s.a(n - 2)) * s.C(n),
        -(s.t(n - 2) + s.t(n - 1)) * s.C(n - 1),
        s.c(n + 1),
        -two * al * s.c(n),
        s.c(n - 1),
        -(one - al * al) * (s.t(n) + s.a(n)),
    )


def _aux7(s: SystemSequences, n: int):
    dom = s.dom
    al = alpha(dom)
    one, two = dom.one, dom.from_fraction(2)
    # the bracket keeps the expanded form c_(n+1) - 2 al c_n + c_n - 2 al c_(n+1)
    bracket = (
        (two * s.a(n) - s.a(n + 2) - s.a(n - 1)) * s.C(n + 1)
        + (two * s.a(n) - s.a(n + 1) - s.a(n - 2)) * s.C(n)
        + s.c(n + 1)
        - two * al * s.c(n)
        + s.c(n)
        - two * al * s.c(n + 1)
        - (one - al * al) * s.a(n)
    )
    return (
        two * (one - al) * s.a(n) * s.B(n) * s.B(n) * s.B(n),
        two * (one - al) * s.b(n) * s.B(n) * s.B(n),
        bracket * s.B(n),
        (s.c(n + 1) + s.a(n + 1) * s.C(n + 1) - s.a(n + 2) * s.C(n + 1)) * s.B(n + 1),
        (s.c(n) + s.a(n - 1) * s.C(n) - s.a(n - 2) * s.C(n)) * s.B(n - 1),
        two * (s.b(n) - al * s.b(n + 1)) * s.C(n + 1),
        two * (s.b(n) - al * s.b(n - 1)) * s.C(n),
        -(one - al * al) * s.b(n),
    )


# equation id -> (smallest n with an in-range stencil, evaluator)
SYSTEM_EQUATIONS = {
    "eq1": (0, _eq1),
    "eq2": (0, _eq2),
    "eq3": (0, _eq3),
    "eq4": (2, _eq4),
    "eq5": (1, _eq5),
    "aux3": (0, _aux3),
    "aux4": (1, _aux4),
    "aux5": (1, _aux5),
    "aux6": (2, _aux6),
    "aux7": (1, _aux7),
}


def system_residuals(
    seqs: SystemSequences,
    n_range: Iterable[int],
    equations: Optional[Sequence[str]] = None,
    enforce_standing_assumption: bool = False,
) -> ResidualReport:
    """Evaluate the difference-equation system over the given n values.

    Residuals whose stencil would reach below the defined index range are
    reported as not evaluated rather than guessed.  When
    ``enforce_standing_assumption`` is set, a vanishing
    r_n = t_n + a_n - a_(n-1) on the requested range raises
    :class:`StandingAssumptionError`; by default it is tolerated, since the
    residuals themselves remain well defined (and zero) for solutions whose
    c_n vanish identically.
    """
    names = list(equations) if equations is not None else list(SYSTEM_EQUATIONS)
    for name in names:
        if name not in SYSTEM_EQUATIONS:
            raise ValueError(f"unknown system equation {name!r}")
    ns = sorted(set(n_range))
    if any(n < 0 for n in ns):
        raise ValueError("system residuals are defined for n >= 0")
    if enforce_standing_assumption:
        for n in ns:
            if seqs.dom.is_zero(seqs.r(n)):
                raise StandingAssumptionError(
                    f"standing assumption violated: r({n}) = 0 for {seqs.label or 'sequences'}"
                )
    report = ResidualReport()
    for name in names:
        min_n, func = SYSTEM_EQUATIONS[name]
        for n in ns:
            if n < min_n:
                report.add_not_evaluated(name, n)
                continue
            report.add(name, n, _combine(seqs.dom, func(seqs, n)), seqs.dom)
    return report


# --------------------------------------------------------------------------
# leading-power constraints, t-structure, uniqueness, initial conditions
# --------------------------------------------------------------------------


def _pi_form(rel: RelationCoeffs):
    """Classify pi as 1 (returns ('pi1', None)) or x - c (('pi_deg1', c))."""
    dom = rel.dom
    lead = rel.pi.coeff(1)
    const = rel.pi.coeff(0)
    if dom.is_zero(lead):
        if dom.is_zero(const - dom.one):
            return "pi1", None
        raise UnsupportedPiError("constant pi must be normalized to 1")
    if dom.is_zero(lead - dom.one):
        return "pi_deg1", -const
    raise UnsupportedPiError("degree-one pi must be monic (x - c)")


def power_constraints(rel: RelationCoeffs, spec: "TTRRSpec", n_max: int) -> ResidualReport:
    """Match (a_n, b_n, c_n) against the leading-coefficient closed forms.

    For pi = 1:      a_n = 0,  b_n = alpha_n,
                     c_n = (alpha_n - alpha_(n-1)) * sum_(j<n) B_j.
    For pi = x - c:  a_n = alpha_n,
                     b_n = -alpha_n c + (alpha_n - alpha_(n-1)) * sum_(j<n) B_j.
    """
    form, c_root = _pi_form(rel)
    dom = rel.dom
    report = ResidualReport()
    bsum = dom.zero
    for n in range(n_max + 1):
        an, an1 = alpha_n(dom, n), alpha_n(dom, n - 1)
        if form == "pi1":
            report.add("power-a", n, rel.a(n), dom)
            report.add("power-b", n, _combine(dom, (rel.b(n), -an)), dom)
            report.add("power-c", n, _combine(dom, (rel.c(n), -(an - an1) * bsum)), dom)
        else:
            report.add("power-a", n, _combine(dom, (rel.a(n), -an)), dom)
            report.add(
                "power-b", n, _combine(dom, (rel.b(n), an * c_root, -(an - an1) * bsum)), dom
            )
        bsum = bsum + spec.B(n)
    return report


def t_fit(seqs: SystemSequences, n_max: int):
    """Fit t_n = k1 q^(n/2) + k2 q^(-n/2) and verify it up to n_max.

    Returns (k1, k2); raises :class:`TStructureError` naming the first n
    at which the fitted structure fails.
    """
    dom = seqs.dom
    k1, k2 = seqs.k1, seqs.k2
    for n in range(1, n_max + 1):
        model = k1 * dom.q_power(Fraction(n, 2)) + k2 * dom.q_power(Fraction(-n, 2))
        if not dom.is_zero(_combine(dom, (seqs.t(n), -model))):
            raise TStructureError(n)
    return k1, k2


def uniqueness_product(seqs: SystemSequences):
    """(c_2 C_1 - q^(-1/2) c_1 C_2)(c_2 C_1 - q^(1/2) c_1 C_2) c_1.

    Zero for every genuine pi = 1 solution; generically nonzero otherwise.
    """
    dom = seqs.dom
    c1, c2 = seqs.c(1), seqs.c(2)
    C1, C2 = seqs.C(1), seqs.C(2)
    f1 = c2 * C1 - dom.q_power(Fraction(-1, 2)) * c1 * C2
    f2 = c2 * C1 - dom.q_power(Fraction(1, 2)) * c1 * C2
    return f1 * f2 * c1


def initial_residuals(case: str, seqs: SystemSequences, c=None) -> ResidualReport:
    """Low-index initial-condition identities for the two pi shapes.

    case 'pi1' checks the three identities tying (B_0, B_1, B_2, C_1, C_2)
    together; case 'pi_deg1' (root c required) checks the five identities
    on (b_1, c_1, b_2, c_2) plus the key combination C_1 + C_2 - 3/4.
    """
    dom = seqs.dom
    al = alpha(dom)
    one, two = dom.one, dom.from_fraction(2)
    report = ResidualReport()
    if case == "pi1":
        B0, B1, B2 = seqs.B(0), seqs.B(1), seqs.B(2)
        C1, C2 = seqs.C(1), seqs.C(2)
        w = dom.from_fraction(4) * al * al + two * al - one
        report.add(
            "init-C1",
            None,
            _combine(dom, ((al + one) * (two * C1 - one), -(B1 - (two * al + one) * B0) * B0)),
            dom,
        )
        report.add(
            "init-B2C2",
            None,
            _combine(
                dom,
                (
                    (two * al + one) * B0 * C2,
                    -B0 * (B0 + B1) * B2,
                    -dom.from_fraction(Fraction(1, 2))
                    * (B0 + B1)
                    * (two * al + one - w * (B0 + B1) * B0 / (al + one)),
                ),
            ),
            dom,
        )
        report.add(
            "init-B2",
            None,
            _combine(
                dom,
                (
                    al * (al + one) * (dom.from_fraction(4) * C2 - one),
                    -(two * al + one) * (B0 + B1) * B2,
                    -(B0 - w * B1) * (B0 + B1),
                ),
            ),
            dom,
        )
        return report
    if case == "pi_deg1":
        if c is None:
            raise ValueError("case 'pi_deg1' needs the root c of pi = x - c")
        B0, B1 = seqs.B(0), seqs.B(1)
        C1, C2 = seqs.C(1), seqs.C(2)
        b1, b2 = seqs.b(1), seqs.b(2)
        c1, c2 = seqs.c(1), seqs.c(2)
        alsq = al * al
        report.add("init-b1", None, _combine(dom, (b1, al * c, -(al - one) * B0)), dom)
        report.add("init-c1", None, _combine(dom, (c1, -(al - one) * (B0 - c) * B0)), dom)
        report.add(
            "init-b2",
            None,
            _combine(
                dom,
                (b2, (two * alsq - one) * c, -(al - one) * (two * al + one) * (B0 + B1)),
            ),
            dom,
        )
        report.add(
            "init-c2",
            None,
            _combine(
                dom,
                (
                    c2,
                    -two * (alsq - one) * (C1 - B0 * B1 - dom.from_fraction(Fraction(1, 2))),
                    -(al - one) * (two * al + one) * (B0 + B1) * (B0 + B1 - c),
                ),
            ),
            dom,
        )
        report.add(
            "init-cross",
            None,
            _combine(dom, ((b2 + c) * (B0 * B1 - C1), (one - alsq) * c, -c2 * B0)),
            dom,
        )
        report.add(
            "init-chebyshev-key",
            None,
            _combine(dom, (C1, C2, -dom.from_fraction(Fraction(3, 4)))),
            dom,
        )
        return report
    raise ValueError(f"unknown case {case!r}; expected 'pi1' or 'pi_deg1'")
