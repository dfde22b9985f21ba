"""Filter Galerkin spectral windows and sweep them over refinements."""
from .base import (
    GAP_MIN_RATIO,
    STABILIZATION_TOL,
    ZERO_CLUSTER_FLOOR,
    AutoGapPolicy,
    EscalateReference,
    Escalation,
    ExpectedDimPolicy,
    FilteredSolution,
    FilterPolicy,
    FilterSelection,
    FixedReference,
    PolicyParseError,
    ReferencePolicy,
    ReferenceSubspace,
    RitzResult,
    SolveStatus,
    SweepRecord,
    SweepReport,
    SweepStatus,
    ThresholdPolicy,
    parse_policy,
)
from .projection import filter_eigs, filtered_solve, projection_matrix, ritz_values
from .sweep import SweepRunner, pollution_flag, sweep


__all__ = [
    "AutoGapPolicy",
    "EscalateReference",
    "Escalation",
    "ExpectedDimPolicy",
    "FilterPolicy",
    "FilterSelection",
    "FilteredSolution",
    "FixedReference",
    "GAP_MIN_RATIO",
    "PolicyParseError",
    "ReferencePolicy",
    "ReferenceSubspace",
    "RitzResult",
    "STABILIZATION_TOL",
    "SolveStatus",
    "SweepRecord",
    "SweepReport",
    "SweepRunner",
    "SweepStatus",
    "ThresholdPolicy",
    "ZERO_CLUSTER_FLOOR",
    "filter_eigs",
    "filtered_solve",
    "parse_policy",
    "pollution_flag",
    "projection_matrix",
    "ritz_values",
    "sweep",
]
