"""Piecewise linear finite elements on uniform meshes of [0, 1]."""
from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Tuple, Union

import numpy as np
from numpy.typing import NDArray

from ..errors import NestingError
from ..linalg import Matrix


Coefficient = Callable[[NDArray[np.float64]], NDArray[np.float64]]
MeshSize = Union[Fraction, str, int, float]

# 2-point Gauss-Legendre integrates the cubic element integrands exactly
_GAUSS_POINTS, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(2)


@dataclass(frozen=True)
class UniformMesh:
    """A uniform mesh of [0, 1] with `cells` elements."""

    cells: int

    @property
    def h(self) -> float:
        """Get the mesh size."""
        return 1.0 / self.cells

    @property
    def nodes(self) -> NDArray[np.float64]:
        """Get the node coordinates, including both endpoints."""
        return np.arange(self.cells + 1) / self.cells

    @property
    def interior(self) -> slice:
        """Get the slice of nodes carrying Dirichlet hat functions."""
        return slice(1, self.cells)


def mesh_cells(h: MeshSize) -> int:
    """
    Convert a mesh size such as "1/64" to its cell count.

    The cell count must be a power of two, at least 2, so meshes nest.
    """
    size = Fraction(h)
    if isinstance(h, float):
        size = size.limit_denominator()

    if size <= 0 or size.numerator != 1:
        raise NestingError(f"mesh size must be 1/N, got {h}")

    return check_cells(size.denominator)


def check_cells(cells: int) -> int:
    """Validate a cell count as a power of two, at least 2."""
    if cells < 2 or cells & (cells - 1):
        raise NestingError(f"cell count must be a power of 2 and >= 2, got {cells}")

    return cells


def p1_mass(mesh: UniformMesh, coefficient: Optional[Coefficient] = None) -> Matrix:
    """Assemble M[j, k] = int c phi_k phi_j over all nodes."""
    values, _, weights = _reference_element(mesh, coefficient)
    local = np.einsum("cq,qa,qb->cab", weights, values, values)
    return _scatter(mesh, local)


def p1_stiffness(
    mesh: UniformMesh, coefficient: Optional[Coefficient] = None
) -> Matrix:
    """Assemble K[j, k] = int c phi_k' phi_j' over all nodes."""
    _, slopes, weights = _reference_element(mesh, coefficient)
    local = np.einsum("cq,a,b->cab", weights, slopes, slopes)
    return _scatter(mesh, local)


def p1_advection(
    mesh: UniformMesh, coefficient: Optional[Coefficient] = None
) -> Matrix:
    """Assemble D[j, k] = int c phi_k phi_j', trial value against test slope."""
    values, slopes, weights = _reference_element(mesh, coefficient)
    local = np.einsum("cq,a,qb->cab", weights, slopes, values)
    return _scatter(mesh, local)


def p1_inclusion(coarse: int, fine: int) -> Matrix:
    """
    Get the prolongation from a coarse P1 space into a fine one.

    Row i holds the fine nodal values of coarse hat i. One refinement level
    has the stencil (1/2, 1, 1/2); several levels are composed.
    """
    check_cells(coarse)
    check_cells(fine)

    if fine < coarse:
        raise NestingError(f"mesh 1/{coarse} does not refine into 1/{fine}")

    inclusion = np.eye(coarse + 1)
    cells = coarse

    while cells < fine:
        inclusion = inclusion @ _one_level(cells)
        cells *= 2

    return inclusion


def _one_level(cells: int) -> Matrix:
    level = np.zeros((cells + 1, 2 * cells + 1))
    rows = np.arange(cells + 1)
    level[rows, 2 * rows] = 1.0
    level[rows[1:], 2 * rows[1:] - 1] = 0.5
    level[rows[:-1], 2 * rows[:-1] + 1] = 0.5
    return level


def _reference_element(
    mesh: UniformMesh, coefficient: Optional[Coefficient]
) -> Tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    # shape functions (1 - xi)/2 and (1 + xi)/2 at the Gauss points
    values = np.stack([(1 - _GAUSS_POINTS) / 2, (1 + _GAUSS_POINTS) / 2], axis=1)
    slopes = np.array([-1.0, 1.0]) / mesh.h

    left = mesh.nodes[:-1, np.newaxis]
    points = left + mesh.h * (1 + _GAUSS_POINTS[np.newaxis, :]) / 2
    scale = np.ones_like(points) if coefficient is None else coefficient(points)
    weights = scale * _GAUSS_WEIGHTS[np.newaxis, :] * mesh.h / 2

    return values, slopes, weights


def _scatter(mesh: UniformMesh, local: NDArray[np.float64]) -> Matrix:
    cells = np.arange(mesh.cells)
    dofs = np.stack([cells, cells + 1], axis=1)
    rows = np.repeat(dofs, 2, axis=1).ravel()
    cols = np.tile(dofs, (1, 2)).ravel()

    matrix = np.zeros((mesh.cells + 1, mesh.cells + 1))
    np.add.at(matrix, (rows, cols), local.reshape(mesh.cells, 4).ravel())
    return matrix
