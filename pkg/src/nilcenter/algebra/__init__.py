"""Exact coefficient arithmetic, phase polynomials and field operators."""
from .coeffrac import CONE, CZERO, CoefFrac
from .field import (
    SubstitutionError,
    TruncationError,
    VectorField3,
    divergence,
    ijm_residual,
    lie_derivative,
    linear_field,
    substitute,
)
from .parampoly import ONE, ZERO, ParamPoly, Rational, as_rational
from .phasepoly import PhasePoly
from .symbols import kernel_symbol, perturbation_symbol, register

__all__ = [
    "CONE",
    "CZERO",
    "CoefFrac",
    "ONE",
    "ParamPoly",
    "PhasePoly",
    "Rational",
    "SubstitutionError",
    "TruncationError",
    "VectorField3",
    "ZERO",
    "as_rational",
    "divergence",
    "ijm_residual",
    "kernel_symbol",
    "lie_derivative",
    "linear_field",
    "perturbation_symbol",
    "register",
    "substitute",
]
