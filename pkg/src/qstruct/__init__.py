"""qstruct: exact structure-relation verification on the q-quadratic lattice.

The package implements the Askey-Wilson divided-difference operator and its
companion averaging operator acting on polynomials, generates monic
orthogonal polynomial families from their three-term recurrences, and
checks the associated structure relations, coefficient formulas and
difference-equation systems with exact arithmetic in Q(u), u = q^(1/4).
"""

from .exactnum import (
    FORMAL,
    FloatDomain,
    FormalDomain,
    ParseError,
    PoleError,
    Rational,
    RationalDomain,
    Scalar,
    ScalarDivisionError,
    UPoly,
    parse_scalar,
    scalar_arith,
    scalar_eval,
)

__version__ = "0.1.0"

__all__ = [
    "FORMAL",
    "FloatDomain",
    "FormalDomain",
    "ParseError",
    "PoleError",
    "Rational",
    "RationalDomain",
    "Scalar",
    "ScalarDivisionError",
    "UPoly",
    "parse_scalar",
    "scalar_arith",
    "scalar_eval",
    "__version__",
]
