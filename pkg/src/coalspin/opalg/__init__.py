"""Exact noncommutative operator algebra (x, p, r**s, Pauli matrices)."""
from .element import (
    DimensionMismatch,
    Element,
    Term,
    adjoint,
    anticommutator,
    canonicalize,
    commutator,
    const,
    imag,
    normal_order_mul,
    p,
    rpow,
    sigma,
    substitute_params,
    sym,
    x,
)
from .scalars import GaussianRational, ScalarPoly, parse_rational
from .serialize import dumps, loads

__all__ = [
    "DimensionMismatch",
    "Element",
    "GaussianRational",
    "ScalarPoly",
    "Term",
    "adjoint",
    "anticommutator",
    "canonicalize",
    "commutator",
    "const",
    "dumps",
    "imag",
    "loads",
    "normal_order_mul",
    "p",
    "parse_rational",
    "rpow",
    "sigma",
    "substitute_params",
    "sym",
    "x",
]
