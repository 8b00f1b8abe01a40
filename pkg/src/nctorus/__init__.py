"""Exact computations in the free product of two irrational rotation algebras.

Scalars live in ``Q(sqrt 3)(d)`` with ``d = exp(2 pi i theta)`` kept symbolic;
vectors are finite combinations of reduced words in the unitaries
``u_1, v_1, u_2, v_2``.
"""

from .field import D, ONE, ZERO, Scalar, conj, eval_numeric, format_scalar, parse_scalar
from .linalg import Matrix, NoSolution, kernel_basis, rank, rref, solve
from .literals import ParseError, parse_scalar_expr, parse_vector
from .vectors import Vector, ZERO_VECTOR, format_vector, inner, mul_vec, norm_sq, trace
from .words import IDENTITY, Word, adjoint, format_word, multiply, parse_word

__version__ = "0.1.0"

__all__ = [
    "D", "IDENTITY", "Matrix", "NoSolution", "ONE", "ParseError", "Scalar", "Vector", "Word", "ZERO",
    "ZERO_VECTOR", "adjoint", "conj", "eval_numeric", "format_scalar", "format_vector", "format_word",
    "inner", "kernel_basis", "mul_vec", "multiply", "norm_sq", "parse_scalar", "parse_scalar_expr",
    "parse_vector", "parse_word", "rank", "rref", "solve", "trace", "__version__",
]
