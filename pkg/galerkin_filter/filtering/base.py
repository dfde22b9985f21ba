"""Types shared by the spectral filter and the refinement sweep."""
from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, confloat, conint, validator

from ..errors import GalerkinFilterError, RankDeficientError, ShapeError
from ..galerkin import GalerkinWindow, Interval
from ..linalg import EigDecomposition, Matrix, RealVector, as_hermitian


ZERO_CLUSTER_FLOOR = 1e-8
GAP_MIN_RATIO = 10.0
STABILIZATION_TOL = 0.01


class PolicyParseError(GalerkinFilterError, ValueError):
    """Exception thrown when a filter policy string is malformed."""


class ThresholdPolicy(BaseModel):
    """Keep eigenvalues of S at or above a fixed threshold."""

    kind: Literal["threshold"] = "threshold"
    threshold: confloat(ge=0.0, le=1.0)  # type: ignore[valid-type]

    def describe(self) -> str:
        """Format the policy for reports."""
        return f"threshold({self.threshold:g})"


class ExpectedDimPolicy(BaseModel):
    """Keep the `dim` largest eigenvalues of S."""

    kind: Literal["expected_dim"] = "expected_dim"
    dim: conint(ge=1)  # type: ignore[valid-type]

    def describe(self) -> str:
        """Format the policy for reports."""
        return f"expected_dim({self.dim})"


class AutoGapPolicy(BaseModel):
    """
    Keep the eigenvalues of S above the largest ratio gap.

    Values below `floor` form the zero cluster and are never kept. Above the
    floor the head ends at the largest ratio between neighbours, provided it
    reaches `min_ratio`; otherwise every value above the floor is kept.
    """

    kind: Literal["auto_gap"] = "auto_gap"
    floor: confloat(gt=0.0) = ZERO_CLUSTER_FLOOR  # type: ignore[valid-type]
    min_ratio: confloat(gt=1.0) = GAP_MIN_RATIO  # type: ignore[valid-type]

    def describe(self) -> str:
        """Format the policy for reports."""
        return "auto_gap"


FilterPolicy = Union[ThresholdPolicy, ExpectedDimPolicy, AutoGapPolicy]


def parse_policy(text: str) -> FilterPolicy:
    """Parse `auto`, `dim=D` or `threshold=T`."""
    name, _, value = text.strip().partition("=")

    try:
        if name == "auto" and not value:
            return AutoGapPolicy()
        if name == "dim":
            return ExpectedDimPolicy(dim=int(value))
        if name == "threshold":
            return ThresholdPolicy(threshold=float(value))
    except ValueError as error:
        raise PolicyParseError(f"invalid policy {text!r}: {error}") from error

    raise PolicyParseError(
        f"invalid policy {text!r}; expected auto, dim=D or threshold=T"
    )


class FixedReference(BaseModel):
    """Use one reference trial space for the whole sweep."""

    kind: Literal["fixed"] = "fixed"
    param: conint(ge=0)  # type: ignore[valid-type]


class EscalateReference(BaseModel):
    """Move to finer reference spaces, from `start` up to `max`, as needed."""

    kind: Literal["escalate"] = "escalate"
    start: conint(ge=0)  # type: ignore[valid-type]
    max: conint(ge=0)  # type: ignore[valid-type]

    @validator("max")
    def check_range(cls, value: int, values: Dict[str, Any]) -> int:
        """Require start <= max."""
        start = values.get("start")
        if start is not None and value < start:
            raise ValueError(f"escalation max {value} is below start {start}")
        return value


ReferencePolicy = Union[FixedReference, EscalateReference]


@dataclass(frozen=True)
class ReferenceSubspace:
    """
    A fixed subspace L nested in the fine trial space.

    Row p of `inclusion` holds the fine-basis coefficients of the p-th basis
    vector of L; `gram` is the Gram matrix of that basis.
    """

    inclusion: Matrix
    gram: Matrix
    label: str = ""

    def __post_init__(self) -> None:
        """Validate the basis rank and the Gram matrix shape."""
        inclusion = np.atleast_2d(np.asarray(self.inclusion))
        dim = inclusion.shape[0]

        if np.linalg.matrix_rank(inclusion) != dim:
            raise RankDeficientError(
                f"reference basis {self.label!r} is not linearly independent",
                "inclusion",
            )

        gram = as_hermitian(self.gram)
        if gram.shape != (dim, dim):
            raise ShapeError(
                f"reference Gram has shape {gram.shape}, expected {(dim, dim)}"
            )

        object.__setattr__(self, "inclusion", inclusion)
        object.__setattr__(self, "gram", gram)

    @classmethod
    def nested(
        cls, inclusion: Matrix, fine_mass: Matrix, label: str = ""
    ) -> ReferenceSubspace:
        """Build a reference subspace whose Gram comes from the fine mass."""
        inclusion = np.atleast_2d(np.asarray(inclusion))
        gram = inclusion.conj() @ fine_mass @ inclusion.T
        return cls(inclusion=inclusion, gram=gram, label=label)

    @property
    def dim(self) -> int:
        """Get dim L."""
        return int(self.inclusion.shape[0])

    @property
    def basis(self) -> Matrix:
        """Get the basis of L as fine-basis coefficient columns."""
        return self.inclusion.T


@dataclass(frozen=True)
class FilterSelection:
    """
    Eigenvalues of S, descending, and the eigenvectors kept by a policy.

    `sigma_p` is clamped to [0, 1]; `selected` has orthonormal columns in
    window coordinates.
    """

    sigma_p: RealVector
    selected: Matrix
    gamma_est: Optional[float]
    policy: FilterPolicy

    @property
    def d(self) -> int:
        """Get the dimension of the filtered subspace."""
        return int(self.selected.shape[1])

    @classmethod
    def empty(cls, window_dim: int, policy: FilterPolicy) -> FilterSelection:
        """Build a selection that keeps nothing."""
        return cls(
            sigma_p=np.zeros(0),
            selected=np.zeros((window_dim, 0)),
            gamma_est=None,
            policy=policy,
        )


@dataclass(frozen=True)
class RitzResult:
    """Ritz values on the filtered subspace and fine-basis Ritz vectors."""

    values: RealVector
    vectors: Matrix


class SolveStatus(str, Enum):
    """Outcome of a single filtered solve."""

    OK = "ok"
    EMPTY_WINDOW = "empty_window"
    EMPTY_SELECTION = "empty_selection"


@dataclass(frozen=True)
class FilteredSolution:
    """Every intermediate of one filtered solve, for reporting."""

    spectrum: EigDecomposition
    window: GalerkinWindow
    s_matrix: Matrix
    selection: FilterSelection
    ritz: Optional[RitzResult]
    status: SolveStatus


class SweepStatus(str, Enum):
    """Outcome of a refinement sweep."""

    STABILIZED = "stabilized"
    UNDETERMINED = "undetermined"


class SweepRecord(BaseModel):
    """One refinement of a sweep."""

    refinement: str
    reference: str
    dim_reference: int
    dim_window: int
    galerkin_values: List[float]
    sigma_p: List[float]
    d_selected: int
    gamma_est: Optional[float]
    ritz_values: List[float]
    status: SolveStatus
    pollution_flag: Optional[bool] = None
    dist_to_reference: Optional[float] = None
    a_shift: Optional[float] = None
    delta_gap: Optional[float] = None
    delta_a_gap: Optional[float] = None

    @property
    def head(self) -> List[float]:
        """Get the selected (leading) eigenvalues of S."""
        return self.sigma_p[: self.d_selected]


class Escalation(BaseModel):
    """A move from one reference space to a finer one."""

    from_reference: str
    to_reference: str
    reason: str


class SweepReport(BaseModel):
    """All records of a sweep plus its conclusion."""

    model: str
    interval: Interval
    policy: str
    reference: str
    status: SweepStatus
    head_count: Optional[int]
    stabilized_at: Optional[str]
    records: List[SweepRecord]
    escalations: List[Escalation] = []
