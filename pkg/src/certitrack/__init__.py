"""Certified homotopy path tracking in exact Gaussian-rational arithmetic."""

from .conditioning import CONSTANTS, Constants, condition_data, projective_newton
from .exact_arith import GaussianRational, SingularMatrix, gr, invert, solve_linear
from .polysys import (
    HomogeneousPolynomial,
    PolySystem,
    bw_inner,
    bw_norm_sq,
    dump_system,
    evaluate,
    jacobian,
    load_system,
)
from .rounding import short_zero
from .stepsize import lu_quadratic
from .tracker import TrackerConfig, TrackResult, TrackStatus, track_segment

__version__ = "0.1.0"

__all__ = [
    "CONSTANTS",
    "Constants",
    "GaussianRational",
    "HomogeneousPolynomial",
    "PolySystem",
    "SingularMatrix",
    "TrackResult",
    "TrackStatus",
    "TrackerConfig",
    "bw_inner",
    "bw_norm_sq",
    "condition_data",
    "dump_system",
    "evaluate",
    "gr",
    "invert",
    "jacobian",
    "load_system",
    "lu_quadratic",
    "projective_newton",
    "short_zero",
    "solve_linear",
    "track_segment",
]
