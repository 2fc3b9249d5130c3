"""Monic orthogonal polynomial families from their three-term recurrences.

A family is defined by the coefficient sequences (B_n, C_n) of

    x P_n = P_(n+1) + B_n P_n + C_n P_(n-1),      P_(-1) = 0,  P_0 = 1,

with C_n nonzero wherever the sequence is generated.  Provided here:

  * the generic TTRR engine (:class:`TTRRSpec`, :func:`generate`),
  * monic Chebyshev polynomials of the first and second kind,
  * the Al-Salam-Chihara family Q_n(x; c, d | q) and the continuous dual
    q-Hahn family H_n(x; a, b, c | q), each with an optional base switch
    that replaces every power of q by the same power of q^(1/2),
  * the specific instances that solve the averaging-operator structure
    relations, bundled with their claimed relation coefficients,
  * the closed-form candidate coefficient sequences that arise when the
    structure-relation system is solved in recurrent form.

Coefficient sequences are memoized on first use; generated instances are
immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .polycore import MonicBasis, XPoly
from .qcalc import alpha_n
from .relations import RelationCoeffs

__all__ = [
    "DEFAULT_HORIZON",
    "FamilyError",
    "TTRRSpec",
    "FamilyInstance",
    "CandidateParams",
    "generate",
    "chebyshev_t",
    "chebyshev_u",
    "al_salam_chihara",
    "cont_dual_q_hahn",
    "pi1_solution_family",
    "linear_pi_chebyshev",
    "pi1_candidate_sequences",
    "linear_pi_candidates",
]

DEFAULT_HORIZON = 32


class FamilyError(ValueError):
    """A recurrence cannot be generated (degenerate or vanishing C_n)."""


class TTRRSpec:
    """Coefficient sequences (B_n, C_n) of a monic three-term recurrence."""

    __slots__ = ("dom", "label", "_B", "_C", "_bmemo", "_cmemo")

    def __init__(self, dom, B: Callable[[int], object], C: Callable[[int], object], label: str):
        self.dom = dom
        self.label = label
        self._B = B
        self._C = C
        self._bmemo: dict = {}
        self._cmemo: dict = {}

    def B(self, n: int):
        if n not in self._bmemo:
            self._bmemo[n] = self._B(n)
        return self._bmemo[n]

    def C(self, n: int):
        if n not in self._cmemo:
            self._cmemo[n] = self._C(n)
        return self._cmemo[n]

    def __repr__(self) -> str:
        return f"TTRRSpec({self.label!r})"


@dataclass(frozen=True)
class FamilyInstance:
    """P_0 .. P_horizon of a TTRR, with the spec that produced them."""

    spec: TTRRSpec
    polys: MonicBasis
    horizon: int

    @property
    def dom(self):
        return self.spec.dom

    def poly(self, n: int) -> XPoly:
        """P_n, with P_n = 0 for negative n."""
        if n < 0:
            return XPoly.zero(self.spec.dom)
        return self.polys[n]


def generate(spec: TTRRSpec, N: int) -> FamilyInstance:
    """Run the recurrence up to P_N; raises FamilyError on a vanishing C_n."""
    if N < 0:
        raise ValueError("horizon must be nonnegative")
    dom = spec.dom
    for n in range(1, N + 1):
        if dom.is_zero(spec.C(n)):
            raise FamilyError(f"C({n}) = 0: {spec.label} stops being an OPS there")
    polys = [XPoly.one(dom)]
    if N >= 1:
        polys.append(XPoly(dom, [-spec.B(0), dom.one]))
    for n in range(1, N):
        nxt = polys[n].mul_x_minus(spec.B(n)) - polys[n - 1].scale(spec.C(n))
        polys.append(nxt)
    return FamilyInstance(spec=spec, polys=MonicBasis(polys), horizon=N)


# --------------------------------------------------------------------------
# named coefficient sequences
# --------------------------------------------------------------------------


def chebyshev_t(dom) -> TTRRSpec:
    """Monic Chebyshev polynomials of the first kind: B_n = 0, C_1 = 1/2, C_n = 1/4."""
    half = dom.from_fraction(Fraction(1, 2))
    quarter = dom.from_fraction(Fraction(1, 4))

    def C(n: int):
        if n <= 0:
            return dom.zero
        return half if n == 1 else quarter

    return TTRRSpec(dom, lambda n: dom.zero, C, "chebyshev-t")


def chebyshev_u(dom) -> TTRRSpec:
    """Monic Chebyshev polynomials of the second kind: B_n = 0, C_n = 1/4."""
    quarter = dom.from_fraction(Fraction(1, 4))
    return TTRRSpec(dom, lambda n: dom.zero, lambda n: quarter if n >= 1 else dom.zero, "chebyshev-u")


def _base_step(base: str) -> Fraction:
    if base == "q":
        return Fraction(1)
    if base == "q_half":
        return Fraction(1, 2)
    raise ValueError(f"unknown base {base!r}; expected 'q' or 'q_half'")


def al_salam_chihara(dom, c, d, base: str = "q") -> TTRRSpec:
    """Monic Al-Salam-Chihara Q_n(x; c, d | q):

        B_n = (c + d) q^n / 2,     C_n = (1 - c d q^(n-1)) (1 - q^n) / 4.

    With base='q_half' every power of q above is taken of q^(1/2) instead.
    """
    step = _base_step(base)
    half = dom.from_fraction(Fraction(1, 2))
    quarter = dom.from_fraction(Fraction(1, 4))
    cd = c * d

    def B(n: int):
        return (c + d) * half * dom.q_power(step * n)

    def C(n: int):
        return (dom.one - cd * dom.q_power(step * (n - 1))) * (dom.one - dom.q_power(step * n)) * quarter

    return TTRRSpec(dom, B, C, f"al-salam-chihara(base={base})")


def cont_dual_q_hahn(dom, a, b, c, base: str = "q") -> TTRRSpec:
    """Monic continuous dual q-Hahn H_n(x; a, b, c | q):

        B_n = [a + 1/a - a (1 - q^n)(1 - b c q^(n-1))
                       - (1 - a b q^n)(1 - a c q^n)/a] / 2,
        C_n = (1 - a b q^(n-1))(1 - a c q^(n-1))(1 - b c q^(n-1))(1 - q^n) / 4.

    Requires a != 0.  With base='q_half' every power of q is of q^(1/2).
    """
    if dom.is_zero(a):
        raise FamilyError("continuous dual q-Hahn needs a != 0")
    step = _base_step(base)
    half = dom.from_fraction(Fraction(1, 2))
    quarter = dom.from_fraction(Fraction(1, 4))
    inv_a = dom.one / a
    ab, ac, bc = a * b, a * c, b * c

    def B(n: int):
        qn = dom.q_power(step * n)
        qn1 = dom.q_power(step * (n - 1))
        return (
            a
            + inv_a
            - a * (dom.one - qn) * (dom.one - bc * qn1)
            - (dom.one - ab * qn) * (dom.one - ac * qn) * inv_a
        ) * half

    def C(n: int):
        qn1 = dom.q_power(step * (n - 1))
        return (
            (dom.one - ab * qn1)
            * (dom.one - ac * qn1)
            * (dom.one - bc * qn1)
            * (dom.one - dom.q_power(step * n))
            * quarter
        )

    return TTRRSpec(dom, B, C, f"cont-dual-q-hahn(base={base})")


# --------------------------------------------------------------------------
# structure-relation solution instances
# --------------------------------------------------------------------------


def _pi_one(dom) -> XPoly:
    return XPoly.one(dom)


def _sigma_value(dom, sigma: int):
    if sigma not in (1, -1):
        raise ValueError("sigma must be +1 or -1")
    return dom.from_fraction(sigma)


def pi1_solution_family(dom, kind: str, sigma: int = 1):
    """A family solving  S_q P_n = alpha_n P_n + c_n P_(n-1),  with its c_n.

    kind 'chebyshev_t':  c_n = 0.
    kind 'asc':          Al-Salam-Chihara with (c, d) = sigma * (1, q^(1/2)),
                         c_n = sigma (1 - q^n)(1 - q^(n-1/2)) / (4 q^(n/2)).
    kind 'cdqh':         continuous dual q-Hahn on base q^(1/2) with
                         parameters (sigma, -sigma, sigma q^(1/4)), so that
                         the pairwise products are ab = -1, ac = q^(1/4),
                         bc = -q^(1/4);
                         c_n = sigma (1-q^(n/2))(1-q^(n-1/2))(1+q^((n-1)/2))
                               / (4 q^((2n-1)/4)).

    Returns (TTRRSpec, RelationCoeffs) with pi = 1 (a_n = 0, b_n = alpha_n).
    """
    sg = _sigma_value(dom, sigma)
    quarter = dom.from_fraction(Fraction(1, 4))
    zero_seq = lambda n: dom.zero  # noqa: E731

    if kind == "chebyshev_t":
        spec = chebyshev_t(dom)
        c_seq = zero_seq
    elif kind == "asc":
        spec = al_salam_chihara(dom, sg, sg * dom.q_power(Fraction(1, 2)), base="q")

        def c_seq(n: int):
            if n <= 0:
                return dom.zero
            return (
                sg
                * (dom.one - dom.q_power(n))
                * (dom.one - dom.q_power(Fraction(2 * n - 1, 2)))
                * quarter
                * dom.q_power(Fraction(-n, 2))
            )

    elif kind == "cdqh":
        # same coefficients as
        #   cont_dual_q_hahn(dom, sg, -sg, sg*q^(1/4), base="q_half")
        # but in fully factored form, which stays numerically stable in
        # float mode (the generic B_n subtracts nearly equal O(1) products)
        half = dom.from_fraction(Fraction(1, 2))

        def B_cdqh(n: int):
            return (
                sg
                * half
                * (
                    (dom.one + dom.q_power(Fraction(-1, 2))) * dom.q_power(Fraction(n, 2))
                    + dom.one
                    - dom.q_power(Fraction(-1, 2))
                )
                * dom.q_power(Fraction(2 * n + 1, 4))
            )

        def C_cdqh(n: int):
            return (
                (dom.one + dom.q_power(Fraction(n - 1, 2)))
                * (dom.one - dom.q_power(Fraction(n, 2)))
                * (dom.one - dom.q_power(Fraction(2 * n - 1, 2)))
                * quarter
            )

        spec = TTRRSpec(dom, B_cdqh, C_cdqh, "cont-dual-q-hahn(base=q_half)")

        def c_seq(n: int):
            if n <= 0:
                return dom.zero
            return (
                sg
                * (dom.one - dom.q_power(Fraction(n, 2)))
                * (dom.one - dom.q_power(Fraction(2 * n - 1, 2)))
                * (dom.one + dom.q_power(Fraction(n - 1, 2)))
                * quarter
                * dom.q_power(Fraction(-(2 * n - 1), 4))
            )

    else:
        raise ValueError(f"unknown kind {kind!r}; expected chebyshev_t, asc or cdqh")

    rel = RelationCoeffs(
        pi=_pi_one(dom),
        a=zero_seq,
        b=lambda n: alpha_n(dom, n),
        c=c_seq,
    )
    return spec, rel


def linear_pi_chebyshev(dom, c):
    """Chebyshev-T with the degree-one relation

        (x - c) S_q T_n = (alpha_n x - alpha_n c) T_n + 0 * T_(n-1),

    i.e. a_n = alpha_n, b_n = -alpha_n c, c_n = 0 for every n.  (Since
    S_q T_n = alpha_n T_n, multiplying by x - c and expanding through the
    recurrence leaves no separate P_(n-1) remainder at any n.)
    """
    spec = chebyshev_t(dom)
    pi = XPoly(dom, [-c, dom.one])
    rel = RelationCoeffs(
        pi=pi,
        a=lambda n: alpha_n(dom, n),
        b=lambda n: -alpha_n(dom, n) * c,
        c=lambda n: dom.zero,
    )
    return spec, rel


# --------------------------------------------------------------------------
# candidate coefficient sequences from the recurrent solution
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CandidateParams:
    """Free parameters of the closed-form candidate sequences.

    B0, r, Kb, k2 parameterize the pi = 1 candidates; a and b the
    degree-one-pi candidates.  Unused fields may stay None.
    """

    B0: object = None
    r: object = None
    Kb: object = None
    k2: object = None
    a: object = None
    b: object = None


def _nonzero(dom, value, what: str, n: int):
    if dom.is_zero(value):
        raise FamilyError(f"{what} vanishes at n = {n}")
    return value


def pi1_candidate_sequences(dom, params: CandidateParams, N: int):
    """Closed-form (B_n, c_n, C_n) for 0 <= n <= N from the pi = 1 analysis:

        B_n = [(1-r)(1-rq) B0 q^(n/2) + Kb (1-q^(n/2))(1-r q^((n+1)/2))]
              * q^(n/2) / [(1-r q^n)(1-r q^(n+1))]
        c_n = (1-q^(n-1/2))(1-q^(n/2)) [B0 (1-rq)(1+q^(n/2)) + Kb (q^(1/2)-q^(n/2))]
              / (2 (1+q^(1/2)) (1-r q^n) q^(n/2))
        C_n = (1-q^(n-1/2))(1-q^(n/2)) [B0 (1-rq)(1+q^(n/2)) + Kb (q^(1/2)-q^(n/2))]
              / (2 k2 (1+q^(1/2)) (1-r q^n)^2)

    Requires k2 != 0 and 1 - r q^n != 0 up to the horizon (error names n).
    """
    B0, r, Kb, k2 = params.B0, params.r, params.Kb, params.k2
    if any(v is None for v in (B0, r, Kb, k2)):
        raise ValueError("pi1 candidates need B0, r, Kb and k2")
    if dom.is_zero(k2):
        raise FamilyError("k2 = 0 degenerates the candidate C_n (0/0)")
    one = dom.one
    two = dom.from_fraction(2)
    rq = r * dom.q_power(1)
    half_sum = one + dom.q_power(Fraction(1, 2))
    lead = (one - r) * (one - rq) * B0

    def denom_factor(n: int):
        return _nonzero(dom, one - r * dom.q_power(n), "1 - r q^n", n)

    Bs, cs, Cs = [], [], []
    for n in range(N + 1):
        qn2 = dom.q_power(Fraction(n, 2))
        core = B0 * (one - rq) * (one + qn2) + Kb * (dom.q_power(Fraction(1, 2)) - qn2)
        window = (one - dom.q_power(Fraction(2 * n - 1, 2))) * (one - qn2)
        d1 = denom_factor(n)
        d2 = _nonzero(dom, one - r * dom.q_power(n + 1), "1 - r q^(n+1)", n)
        Bs.append(
            (lead * qn2 + Kb * (one - qn2) * (one - r * dom.q_power(Fraction(n + 1, 2))))
            * qn2
            / (d1 * d2)
        )
        cs.append(window * core / (two * half_sum * d1 * qn2))
        Cs.append(window * core / (two * k2 * half_sum * d1 * d1))
    return Bs, cs, Cs


def linear_pi_candidates(dom, case: str, params: CandidateParams, N: int):
    """Closed-form (B_n, C_n) candidates for the degree-one-pi analysis.

    case 'geometric':  B_n = (a+b) q^n / 2,
                       C_n = (1 - a b q^(n-1))(1 - q^n) / 4        (n >= 1),
                       the branch whose parameters satisfy a^2 + b^2 = 2 alpha a b.
    case 'rational':   B_n = q^(1/4)(1+q^(1/2)) (1-ab)(a-b) q^n
                             / [2 (1-ab q^n)(1-ab q^(n+1))],
                       C_n = (1-q^n)(1-a^2 q^n)(1-b^2 q^n)(1-a^2 b^2 q^n)
                             / [4 (1-ab q^(n-1/2))(1-ab q^n)^2 (1-ab q^(n+1/2))].

    Vanishing denominators raise with the offending n.
    """
    a, b = params.a, params.b
    if a is None or b is None:
        raise ValueError("degree-one-pi candidates need a and b")
    one = dom.one
    ab = a * b
    Bs, Cs = [], []
    if case == "geometric":
        half = dom.from_fraction(Fraction(1, 2))
        quarter = dom.from_fraction(Fraction(1, 4))
        for n in range(N + 1):
            Bs.append((a + b) * half * dom.q_power(n))
            Cs.append(
                dom.zero
                if n == 0
                else (one - ab * dom.q_power(n - 1)) * (one - dom.q_power(n)) * quarter
            )
        return Bs, Cs
    if case == "rational":
        half = dom.from_fraction(Fraction(1, 2))
        quarter = dom.from_fraction(Fraction(1, 4))
        front = dom.q_power(Fraction(1, 4)) * (one + dom.q_power(Fraction(1, 2)))
        for n in range(N + 1):
            qn = dom.q_power(n)
            d_mid = _nonzero(dom, one - ab * qn, "1 - ab q^n", n)
            d_hi = _nonzero(dom, one - ab * dom.q_power(n + 1), "1 - ab q^(n+1)", n)
            Bs.append(front * (one - ab) * (a - b) * qn * half / (d_mid * d_hi))
            if n == 0:
                Cs.append(dom.zero)
            else:
                d_lo = _nonzero(dom, one - ab * dom.q_power(Fraction(2 * n - 1, 2)), "1 - ab q^(n-1/2)", n)
                d_up = _nonzero(dom, one - ab * dom.q_power(Fraction(2 * n + 1, 2)), "1 - ab q^(n+1/2)", n)
                num = (
                    (one - qn)
                    * (one - a * a * qn)
                    * (one - b * b * qn)
                    * (one - ab * ab * qn)
                )
                Cs.append(num * quarter / (d_lo * d_mid * d_mid * d_up))
        return Bs, Cs
    raise ValueError(f"unknown case {case!r}; expected 'geometric' or 'rational'")
