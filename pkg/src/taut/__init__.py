"""Exact symbolic toolkit for tautological systems of differential equations."""

from .algebra import (
    GroebnerBasis,
    Polynomial,
    RationalFunction,
    TermOrder,
    comm_groebner,
    gcd,
    poly_normal_form,
)
from .kernels import BACKEND
from .parsing import ParseError, parse_operator, parse_polynomial
from .weyl import (
    LeftGB,
    WeylElement,
    apply,
    fourier_laplace,
    holonomic_rank,
    ideal_equal,
    is_euler_homogeneous,
    left_groebner,
    transpose,
    weyl_mul,
    weyl_normal_form,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "GroebnerBasis",
    "LeftGB",
    "ParseError",
    "Polynomial",
    "RationalFunction",
    "TermOrder",
    "WeylElement",
    "apply",
    "comm_groebner",
    "fourier_laplace",
    "gcd",
    "holonomic_rank",
    "ideal_equal",
    "is_euler_homogeneous",
    "left_groebner",
    "parse_operator",
    "parse_polynomial",
    "poly_normal_form",
    "transpose",
    "weyl_mul",
    "weyl_normal_form",
]
