"""Exact scalars: rationals, prime fields, sparse and bivariate polynomials."""

from .fields import DEFAULT_PRIME, QQ, DomainError, PrimeField, format_rational, parse_rational
from .multipoly import MultiPoly, NotExactDivision, PolyRing
from .bipoly import (
    INFINITE,
    BiPoly,
    bipoly_equal_up_to_scalar,
    divide_bipoly_exact,
    interpolate_homogeneous,
    linear_form_multiplicity,
)
from .univariate import resultant

__all__ = [
    "DEFAULT_PRIME", "QQ", "DomainError", "PrimeField", "format_rational", "parse_rational",
    "MultiPoly", "NotExactDivision", "PolyRing", "INFINITE", "BiPoly",
    "bipoly_equal_up_to_scalar", "divide_bipoly_exact", "interpolate_homogeneous",
    "linear_form_multiplicity", "resultant",
]
