"""Block operator matrices discretized with piecewise linear elements."""
import math
import re
from typing import List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import block_diag

from ..errors import NestingError
from ..galerkin import Interval, Pencil
from ..linalg import Matrix
from .base import KnownEigenvalue, ModelFamily, ReferenceData, SpectralBand
from .fem import (
    MeshSize,
    UniformMesh,
    check_cells,
    mesh_cells,
    p1_advection,
    p1_inclusion,
    p1_mass,
    p1_stiffness,
)


_H_PATTERN = re.compile(r"^(?:h\s*=\s*)?(\d+\s*/\s*\d+|[0-9.eE+-]+)$")

CLOSED_FORM_MODES = 10

# MHD slab parameters
K_PERP = 1.0
K_PAR = 1.0
K_SQUARED = K_PERP ** 2 + K_PAR ** 2
LAMBDA_1_MHD = 0.279
LAMBDA_2_MHD = 1.734


class P1BlockModel(ModelFamily):
    """
    Shared refinement handling for P1 product spaces.

    The first component uses Dirichlet hats, every other component uses all
    hats, so the inclusion matrix is block diagonal across components.
    """

    free_components: int
    coarsest = 2
    refinement_flag = "h"
    default_schedule = (8, 16, 32, 64, 128, 256)

    def inclusion_matrix(self, coarse: int, fine: int) -> Matrix:
        """Prolong every component of a coarse product space to a fine one."""
        scalar = p1_inclusion(coarse, fine)
        dirichlet = scalar[1:-1, 1:-1]
        return block_diag(dirichlet, *([scalar] * self.free_components))

    def check_refinement(self, param: int) -> int:
        """Require a cell count that is a power of two."""
        return check_cells(param)

    def parse_refinement(self, text: str) -> int:
        """Parse a mesh size such as `1/64` or `h=1/64`."""
        match = _H_PATTERN.match(text.strip())
        if match is None:
            raise NestingError(f"cannot parse mesh size {text!r}")

        size = match.group(1).replace(" ", "")
        return mesh_cells(float(size) if "/" not in size else size)

    def tag(self, param: int) -> str:
        """Format the refinement as a mesh size, like `h=1/64`."""
        return f"h=1/{param}"

    def next_refinement(self, param: int) -> int:
        """Halve the mesh size."""
        return param * 2

    def _label(self, cells: int) -> str:
        return f"{self.id} {self.tag(cells)}"


class AdvectionBlockModel(P1BlockModel):
    """
    The block operator (-d2/dx2, -d/dx; d/dx, 2) on L^2(0,1) x L^2(0,1).

    Weak form: a[(u,w),(v,z)] = int u'v' + int w v' + int u'z + 2 int w z with
    u, v vanishing at both endpoints.
    """

    id = "model2"
    free_components = 1

    def assemble(self, param: int) -> Pencil:
        """Assemble the pencil over Dirichlet hats x free hats."""
        mesh = UniformMesh(self.check_refinement(param))
        inner = mesh.interior

        stiffness = p1_stiffness(mesh)[inner, inner]
        coupling = p1_advection(mesh)[inner, :]
        mass = p1_mass(mesh)

        a_matrix = np.block([[stiffness, coupling], [coupling.T, 2 * mass]])
        m_matrix = block_diag(mass[inner, inner], mass)

        return Pencil(
            stiffness=a_matrix, mass=m_matrix, label=self._label(mesh.cells)
        )

    def reference_spectrum(self) -> ReferenceData:
        """Get the essential point 1, the eigenvalue 2 and lambda_k^+-."""
        known = [KnownEigenvalue(value=2.0, source="eigenvector (0, 1)")]

        for k in range(1, CLOSED_FORM_MODES + 1):
            lower, upper = closed_form_pair(k)
            known.append(KnownEigenvalue(value=lower, source=f"lambda_{k}^- formula"))
            known.append(KnownEigenvalue(value=upper, source=f"lambda_{k}^+ formula"))

        return ReferenceData(
            essential_intervals=[SpectralBand(lower=1.0, upper=1.0)],
            known_eigenvalues=sorted(known, key=lambda item: item.value),
        )

    def eigenvector_interpolants(
        self, param: int, delta: Interval
    ) -> Optional[Matrix]:
        """
        Interpolate the exact eigenvectors for every eigenvalue in `delta`.

        For lambda_k^+- the eigenvector is u = sin(k pi x) and
        w = k pi cos(k pi x) / (lambda - 2); for 2 it is (0, 1).
        """
        mesh = UniformMesh(self.check_refinement(param))
        nodes = mesh.nodes
        columns: List[NDArray[np.float64]] = []

        if delta.contains(2.0):
            columns.append(
                np.concatenate([np.zeros(mesh.cells - 1), np.ones(mesh.cells + 1)])
            )

        for k in range(1, CLOSED_FORM_MODES + 1):
            for value in closed_form_pair(k):
                if delta.contains(value):
                    u = np.sin(k * math.pi * nodes)[mesh.interior]
                    w = k * math.pi * np.cos(k * math.pi * nodes) / (value - 2.0)
                    columns.append(np.concatenate([u, w]))

        if not columns:
            return None

        return np.stack(columns, axis=1)


class MHDBlockModel(P1BlockModel):
    """
    A 3x3 magnetohydrodynamic block operator on L^2(0,1)^3.

    With p = va^2 + vs^2 (identically 1), the Hermitian weak form is

        int p u'v' + k^2 int va^2 u v
        + i k_perp (int p w v' + int w v) + i k_par (int vs^2 q v' + int q v)
        + int (k^2 va^2 + k_perp^2 vs^2) w z + k_perp k_par int vs^2 q z
        + k_par^2 int vs^2 q r

    plus the conjugate transposes of the off-diagonal couplings, with
    k^2 = k_perp^2 + k_par^2.
    """

    id = "model3"
    free_components = 2

    def assemble(self, param: int) -> Pencil:
        """Assemble the complex pencil over Dirichlet x free x free hats."""
        mesh = UniformMesh(self.check_refinement(param))
        inner = mesh.interior

        mass = p1_mass(mesh)
        uu = p1_stiffness(mesh, total_speed) + K_SQUARED * p1_mass(mesh, alfven)
        uw = 1j * K_PERP * (p1_advection(mesh, total_speed) + mass)
        uq = 1j * K_PAR * (p1_advection(mesh, sound) + mass)
        ww = p1_mass(mesh, _transverse)
        wq = K_PERP * K_PAR * p1_mass(mesh, sound)
        qq = K_PAR ** 2 * p1_mass(mesh, sound)

        uu, uw, uq = uu[inner, inner], uw[inner, :], uq[inner, :]
        a_matrix = np.block(
            [
                [uu, uw, uq],
                [uw.conj().T, ww, wq],
                [uq.conj().T, wq.T, qq],
            ]
        )
        m_matrix = block_diag(mass[inner, inner], mass, mass)

        return Pencil(
            stiffness=a_matrix, mass=m_matrix, label=self._label(mesh.cells)
        )

    def reference_spectrum(self) -> ReferenceData:
        """Get both essential bands and the two approximate gap eigenvalues."""
        return ReferenceData(
            essential_intervals=[
                SpectralBand(lower=7 / 64, upper=1 / 4),
                SpectralBand(lower=3 / 8, upper=7 / 8),
            ],
            known_eigenvalues=[
                KnownEigenvalue(
                    value=LAMBDA_1_MHD,
                    source="second order relative spectrum",
                    approximate=True,
                ),
                KnownEigenvalue(
                    value=LAMBDA_2_MHD, source="perturbation method", approximate=True
                ),
            ],
        )


def closed_form_pair(k: int) -> Tuple[float, float]:
    """Get (lambda_k^-, lambda_k^+) of the advection block model."""
    square = (k * math.pi) ** 2
    root = math.sqrt((square + 2) ** 2 - 4 * square)
    return (2 + square - root) / 2, (2 + square + root) / 2


def alfven(x: NDArray[np.float64]) -> NDArray[np.float64]:
    """Evaluate va(x)^2 = 7/8 - x/2."""
    return 7 / 8 - x / 2


def sound(x: NDArray[np.float64]) -> NDArray[np.float64]:
    """Evaluate vs(x)^2 = 1/8 + x/2."""
    return 1 / 8 + x / 2


def total_speed(x: NDArray[np.float64]) -> NDArray[np.float64]:
    """Evaluate va(x)^2 + vs(x)^2."""
    return alfven(x) + sound(x)


def _transverse(x: NDArray[np.float64]) -> NDArray[np.float64]:
    return K_SQUARED * alfven(x) + K_PERP ** 2 * sound(x)


def model2_assemble(h: MeshSize) -> Pencil:
    """Assemble the advection block pencil for mesh size h = 1/N."""
    return AdvectionBlockModel().assemble(mesh_cells(h))


def model3_assemble(h: MeshSize) -> Pencil:
    """Assemble the MHD block pencil for mesh size h = 1/N."""
    return MHDBlockModel().assemble(mesh_cells(h))

