"""Top-level module for galerkin_filter."""
from .filtering import (
    AutoGapPolicy,
    EscalateReference,
    ExpectedDimPolicy,
    FixedReference,
    ReferenceSubspace,
    SweepRunner,
    ThresholdPolicy,
    filter_eigs,
    filtered_solve,
    pollution_flag,
    projection_matrix,
    ritz_values,
    sweep,
)
from .galerkin import Interval, Pencil, solve_galerkin, spectral_window
from .models import get_family, inclusion_matrix, reference_spectrum

__all__ = [
    "AutoGapPolicy",
    "EscalateReference",
    "ExpectedDimPolicy",
    "FixedReference",
    "Interval",
    "Pencil",
    "ReferenceSubspace",
    "SweepRunner",
    "ThresholdPolicy",
    "filter_eigs",
    "filtered_solve",
    "get_family",
    "inclusion_matrix",
    "pollution_flag",
    "projection_matrix",
    "reference_spectrum",
    "ritz_values",
    "solve_galerkin",
    "spectral_window",
    "sweep",
]
__version__ = "0.1.0"
