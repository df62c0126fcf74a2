"""Exact scalars, integer polynomials and the cyclotomic degree machinery."""
from fractions import Fraction

from .numtheory import (
    ROOT_MATCH_TOL,
    annihilator_shifted_square,
    cyclotomic,
    degree_of_shifted_square,
    is_prime,
    k_of_d,
    minpoly_two_cos,
    quadratic_cosines,
    rational_cosines,
    rational_roots,
    shifted_square_exact,
    shifted_square_is_rational,
    shifted_square_minpoly,
    totient,
)
from .poly import IntPoly, gcd, resultant, squarefree_part
from .quadratic import QuadExt
from .scalars import Scalar, format_scalar, parse_scalar

Rational = Fraction

__all__ = [
    "Fraction", "Rational", "QuadExt", "Scalar", "IntPoly",
    "format_scalar", "parse_scalar", "gcd", "resultant", "squarefree_part",
    "ROOT_MATCH_TOL", "annihilator_shifted_square", "cyclotomic", "degree_of_shifted_square",
    "is_prime", "k_of_d", "minpoly_two_cos", "quadratic_cosines", "rational_cosines",
    "rational_roots", "shifted_square_exact", "shifted_square_is_rational",
    "shifted_square_minpoly", "totient",
]
