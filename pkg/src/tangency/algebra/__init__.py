from .bivariate import bivariate_gcd, common_zeros, resultant_y, slice_at_x, to_yx
from .field import GF, QQ, Field, Scalar, is_prime
from .poly import (
    MultiPoly,
    evaluate,
    monomials_up_to,
    parse_poly,
    partial_derivative,
    poly_add,
    poly_mul,
    substitute_univariate,
)
from .univariate import UniPoly, roots_in_field, univariate_gcd

__all__ = [
    "Field",
    "QQ",
    "GF",
    "Scalar",
    "is_prime",
    "MultiPoly",
    "UniPoly",
    "poly_add",
    "poly_mul",
    "partial_derivative",
    "evaluate",
    "substitute_univariate",
    "resultant_y",
    "univariate_gcd",
    "roots_in_field",
    "bivariate_gcd",
    "common_zeros",
    "slice_at_x",
    "to_yx",
    "monomials_up_to",
    "parse_poly",
]
