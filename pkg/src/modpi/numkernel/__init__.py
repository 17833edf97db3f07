"""Exact rationals, arbitrary-precision reals, integer polynomials and Q(u)."""

from fractions import Fraction as Rational

from .algebraic import (AlgebraicNumber, alg_eval, alg_inverse, alg_mul, number_field,
                        poly_eval_alg)
from .bigreal import BigReal, bigreal_nth_root, iroot
from .poly import (IntPoly, check_squarefree, count_roots, isolate_real_roots, poly_mul,
                   refine_interval, refine_root, sturm_sequence)

__all__ = [
    "AlgebraicNumber", "BigReal", "IntPoly", "Rational", "alg_eval", "alg_inverse", "alg_mul",
    "bigreal_nth_root", "check_squarefree", "count_roots", "iroot", "isolate_real_roots",
    "number_field", "poly_eval_alg", "poly_mul", "refine_interval", "refine_root",
    "sturm_sequence",
]
