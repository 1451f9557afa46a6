"""Exact center-detection obstructions for 3D nilpotent polynomial vector fields."""
from .algebra import CoefFrac, ParamPoly, PhasePoly, VectorField3
from .cmanifold import cm_jet, restrict
from .ijm import Seed, obstructions, reduce_chain, self_check, solve_kernel_unknowns
from .lyapunov import build_family, eta_quantities
from .monodromy import andreev2_criterion_3d
from .planar import PlanarField, verify_iif
from .sysio import load_system, parse_system, print_canonical

__version__ = "0.1.0"

__all__ = [
    "CoefFrac",
    "ParamPoly",
    "PhasePoly",
    "PlanarField",
    "Seed",
    "VectorField3",
    "andreev2_criterion_3d",
    "build_family",
    "cm_jet",
    "eta_quantities",
    "load_system",
    "obstructions",
    "parse_system",
    "print_canonical",
    "reduce_chain",
    "restrict",
    "self_check",
    "solve_kernel_unknowns",
    "verify_iif",
]
