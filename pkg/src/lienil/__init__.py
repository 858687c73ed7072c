"""Relatively free associative algebras with the Lie nilpotency identity.

Exact graded computations in the free associative algebra F_r over Q or F_p
(p >= 5) modulo the T-ideals T^(n) generated by [x1, ..., xn].
"""
from .scalars import GF, QQ, FieldError, FieldSpec, Scalar
from .freealg import NcPoly, commutator, right_normed
from .polytext import ParseError, format_poly, parse_poly

__version__ = "0.1.0"

__all__ = [
    "FieldError", "FieldSpec", "GF", "QQ", "Scalar",
    "NcPoly", "commutator", "right_normed",
    "ParseError", "format_poly", "parse_poly",
]
