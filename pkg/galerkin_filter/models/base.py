"""Base interfaces for model operator families."""
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, validator

from ..galerkin import Interval, Pencil
from ..linalg import Matrix


class SpectralBand(BaseModel):
    """A closed band of essential spectrum; a point when lower == upper."""

    lower: float
    upper: float

    class Config:
        """Bands are immutable values."""

        allow_mutation = False

    @validator("upper")
    def check_order(cls, value: float, values: Dict[str, Any]) -> float:
        """Reject reversed bands."""
        lower = values.get("lower")
        if lower is not None and value < lower:
            raise ValueError(f"band requires lower <= upper, got [{lower}, {value}]")
        return value


class KnownEigenvalue(BaseModel):
    """A published or closed-form eigenvalue with the citation it came from."""

    value: float
    source: str
    approximate: bool = False

    @validator("source")
    def check_source(cls, value: str) -> str:
        """Require a non-empty source tag."""
        if not value.strip():
            raise ValueError("known eigenvalues need a source")
        return value


class ReferenceData(BaseModel):
    """Reference spectral data for a model family."""

    essential_intervals: List[SpectralBand]
    known_eigenvalues: List[KnownEigenvalue]

    def eigenvalues_in(self, delta: Interval) -> List[float]:
        """Get the known eigenvalues lying in an interval, ascending."""
        return sorted(
            item.value for item in self.known_eigenvalues if delta.contains(item.value)
        )


class ModelFamily(ABC):
    """
    A sequence of nested trial spaces for one model operator.

    Refinement parameters are integers: the mode cutoff k for Fourier
    families, the cell count N = 1/h for finite element families.
    """

    id: str
    coarsest: int
    refinement_flag: str
    default_schedule: Tuple[int, ...]

    @abstractmethod
    def assemble(self, param: int) -> Pencil:
        """Assemble the pencil of the trial space with parameter `param`."""
        ...

    @abstractmethod
    def inclusion_matrix(self, coarse: int, fine: int) -> Matrix:
        """Express each coarse basis function in the fine basis, one per row."""
        ...

    @abstractmethod
    def reference_spectrum(self) -> ReferenceData:
        """Get the published and closed-form spectral data."""
        ...

    @abstractmethod
    def check_refinement(self, param: int) -> int:
        """Validate a refinement parameter, returning it unchanged."""
        ...

    @abstractmethod
    def parse_refinement(self, text: str) -> int:
        """Parse a refinement parameter from command-line text."""
        ...

    @abstractmethod
    def tag(self, param: int) -> str:
        """Format a refinement parameter for reports, like `h=1/64`."""
        ...

    @abstractmethod
    def next_refinement(self, param: int) -> int:
        """Get the next trial space in the nested sequence."""
        ...

    def eigenvector_interpolants(
        self, param: int, delta: Interval
    ) -> Optional[Matrix]:
        """
        Get interpolants of the exact eigenvectors for eigenvalues in `delta`.

        Families without closed-form eigenvectors return None.
        """
        return None
