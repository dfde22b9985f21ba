"""Test helper classes and builders."""
from typing import Sequence, Tuple

import numpy as np
from numpy.random import Generator

from galerkin_filter.galerkin import Pencil
from galerkin_filter.linalg import Matrix
from galerkin_filter.models import (
    KnownEigenvalue,
    ModelFamily,
    ReferenceData,
    SpectralBand,
)


class DiagonalFamily(ModelFamily):
    """
    Pencils diag(values[0..p]) over the first p + 1 unit vectors.

    Every space nests in the next, so coordinate inclusions serve as
    reference spaces.
    """

    id = "diagonal"
    coarsest = 0
    refinement_flag = "k"
    default_schedule = (3, 4, 5)

    def __init__(self, values: Sequence[float] = (1, 2, 3, 4, 5, 6)) -> None:
        """Initialize the family with its diagonal."""
        self.values = np.asarray(values, dtype=float)

    def assemble(self, param: int) -> Pencil:
        """Assemble the leading diagonal block."""
        dim = self.check_refinement(param) + 1
        return Pencil(
            stiffness=np.diag(self.values[:dim]),
            mass=np.eye(dim),
            label=f"{self.id} {self.tag(param)}",
        )

    def inclusion_matrix(self, coarse: int, fine: int) -> Matrix:
        """Pad the coarse identity with zero columns."""
        return np.eye(coarse + 1, fine + 1)

    def reference_spectrum(self) -> ReferenceData:
        """Get every diagonal value as a known eigenvalue."""
        return ReferenceData(
            essential_intervals=[SpectralBand(lower=0.0, upper=0.0)],
            known_eigenvalues=[
                KnownEigenvalue(value=value, source="diagonal")
                for value in self.values
            ],
        )

    def check_refinement(self, param: int) -> int:
        """Require a parameter inside the diagonal."""
        assert 0 <= param < self.values.size
        return param

    def parse_refinement(self, text: str) -> int:
        """Parse a plain integer."""
        return int(text)

    def tag(self, param: int) -> str:
        """Format the parameter like `p=3`."""
        return f"p={param}"

    def next_refinement(self, param: int) -> int:
        """Add one unit vector."""
        return param + 1


def random_hermitian(rng: Generator, dim: int) -> Matrix:
    """Create a random complex Hermitian matrix."""
    raw = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (raw + raw.conj().T) / 2


def random_mass(rng: Generator, dim: int) -> Matrix:
    """Create a random, well conditioned, real positive definite matrix."""
    raw = rng.standard_normal((dim, dim))
    return raw @ raw.T + dim * np.eye(dim)


def random_problem(rng: Generator, dim: int, dim_l: int) -> Tuple[Pencil, Matrix]:
    """Create a random pencil and a random full-rank real inclusion matrix."""
    pencil = Pencil(stiffness=random_hermitian(rng, dim), mass=random_mass(rng, dim))
    inclusion = rng.standard_normal((dim_l, dim))
    return pencil, inclusion


def direct_projection(vectors: Matrix, basis: Matrix, gram: Matrix) -> Matrix:
    """
    Build <P u_j, u_i> entrywise from an explicit projector.

    P = B (B* G B)^-1 B* G in coordinates, with the columns of `basis` as B.
    """
    adjoint = basis.conj().T @ gram
    projector = basis @ np.linalg.solve(adjoint @ basis, adjoint)
    dim = vectors.shape[1]
    result = np.zeros((dim, dim), dtype=complex)

    for i in range(dim):
        for j in range(dim):
            result[i, j] = vectors[:, i].conj() @ gram @ (projector @ vectors[:, j])

    return result

