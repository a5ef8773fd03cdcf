"""Exact polynomial/rational-function kernel and numeric boundary tools."""

from fractions import Fraction as BigRational

from .gcd import poly_gcd, squarefree_part
from .poly import (MPoly, divides, exact_divide, parse_poly, poly_eval)
from .ratfunc import RatFunc, compose_parts, compose_poly
from .resultant import det_bareiss, resultant, sylvester_matrix
from .roots import roots, roots_of_poly, root_sort_key

__all__ = [
    "BigRational", "MPoly", "RatFunc",
    "parse_poly", "poly_eval", "exact_divide", "divides",
    "poly_gcd", "squarefree_part",
    "resultant", "sylvester_matrix", "det_bareiss",
    "roots", "roots_of_poly", "root_sort_key",
    "compose_poly", "compose_parts",
    "equal_up_to_scale",
]


def equal_up_to_scale(p: MPoly, q: MPoly) -> bool:
    """p == lambda * q for a nonzero rational lambda (graded lex leading terms)."""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    p, q = MPoly.align(p, q)
    return p * q.leading_coeff() == q * p.leading_coeff()
