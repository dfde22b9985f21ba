"""Galerkin eigenproblems over a finite trial space."""
from __future__ import annotations
from dataclasses import dataclass
from logging import getLogger
from typing import Any, Dict, Optional

import numpy as np
from pydantic import BaseModel, validator

from .errors import ShapeError, ShiftError
from .linalg import (
    DEFAULT_TOL,
    EigDecomposition,
    Matrix,
    RealVector,
    as_hermitian,
    cholesky,
    generalized_eig,
)


log = getLogger(__name__)


class Interval(BaseModel):
    """A closed interval [a, b] with a < b."""

    a: float
    b: float

    class Config:
        """Intervals are immutable values."""

        allow_mutation = False

    @validator("b")
    def check_order(cls, value: float, values: Dict[str, Any]) -> float:
        """Reject empty and reversed intervals."""
        lower = values.get("a")
        if lower is not None and not lower < value:
            raise ValueError(f"interval requires a < b, got [{lower}, {value}]")
        return value

    def contains(self, value: float) -> bool:
        """Check whether a value lies in the closed interval."""
        return self.a <= value <= self.b

    def __str__(self) -> str:
        """Format the interval like [a, b]."""
        return f"[{self.a:g}, {self.b:g}]"


@dataclass(frozen=True)
class Pencil:
    """
    Matrices of the form and the inner product on a trial space.

    `stiffness[j, k]` holds a[phi_k, phi_j] and `mass[j, k]` holds
    <phi_k, phi_j>. Both are symmetrized on construction and the mass matrix
    must pass a Cholesky factorization.
    """

    stiffness: Matrix
    mass: Matrix
    label: str = ""

    def __post_init__(self) -> None:
        """Validate and symmetrize the pencil matrices."""
        stiffness = as_hermitian(self.stiffness)
        mass = as_hermitian(self.mass)

        if stiffness.shape != mass.shape:
            raise ShapeError(
                f"pencil {self.label!r} has stiffness {stiffness.shape} "
                f"but mass {mass.shape}"
            )

        cholesky(mass)
        object.__setattr__(self, "stiffness", stiffness)
        object.__setattr__(self, "mass", mass)

    @property
    def dim(self) -> int:
        """Get the dimension of the trial space."""
        return int(self.mass.shape[0])


@dataclass(frozen=True)
class GalerkinWindow:
    """
    Galerkin eigenpairs whose eigenvalues lie in an interval.

    Columns of `vectors` are mass-orthonormal coefficient vectors in the
    trial basis of the parent pencil.
    """

    mu: RealVector
    vectors: Matrix
    parent: str
    interval: Interval

    @property
    def dim(self) -> int:
        """Get the window dimension, counted with multiplicity."""
        return int(self.mu.shape[0])


def solve_galerkin(pencil: Pencil, tol: float = DEFAULT_TOL) -> EigDecomposition:
    """Get all Galerkin eigenpairs of a pencil."""
    spectrum = generalized_eig(pencil.stiffness, pencil.mass, tol)
    log.debug(
        "solved %s: dim %d, spectrum in [%g, %g]",
        pencil.label,
        pencil.dim,
        spectrum.values[0],
        spectrum.values[-1],
    )
    return spectrum


def spectral_window(
    spectrum: EigDecomposition, delta: Interval, parent: str = ""
) -> GalerkinWindow:
    """
    Select the eigenpairs with a <= mu <= b.

    An empty window is a valid result.
    """
    mask = (spectrum.values >= delta.a) & (spectrum.values <= delta.b)

    return GalerkinWindow(
        mu=spectrum.values[mask],
        vectors=spectrum.vectors[:, mask],
        parent=parent,
        interval=delta,
    )


def default_shift(spectrum: EigDecomposition) -> float:
    """Get the energy-norm shift used when min sigma(A) is unknown."""
    return float(spectrum.values[0]) - 1.0


def a_gram(
    pencil: Pencil,
    m_shift: float,
    spectrum: Optional[EigDecomposition] = None,
) -> Matrix:
    """
    Get the Gram matrix of the energy inner product a[u,v] - (m - 1)<u,v>.

    `spectrum` may be passed to avoid solving the pencil again.
    """
    if spectrum is None:
        spectrum = solve_galerkin(pencil)

    lowest = float(spectrum.values[0])

    if m_shift > lowest:
        raise ShiftError(
            f"shift {m_shift:g} exceeds the smallest Galerkin eigenvalue {lowest:g}"
        )

    return as_hermitian(pencil.stiffness + (1.0 - m_shift) * pencil.mass)


def window_residual(pencil: Pencil, window: GalerkinWindow) -> float:
    """Get max |U* A U - diag(mu)| for a window, a consistency diagnostic."""
    if window.dim == 0:
        return 0.0

    projected = window.vectors.conj().T @ pencil.stiffness @ window.vectors
    return float(np.max(np.abs(projected - np.diag(window.mu))))
