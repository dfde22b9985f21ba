"""
Multiplication by a sawtooth plus a rank-one term, in a Fourier basis.

The operator is A u = a(x) u + 10 <u, v_0> v_0 on L^2(-pi, pi), where
a(x) = -2 pi - x on (-pi, 0] and 2 pi - x on (0, pi], with trial spaces
spanned by v_j = (2 pi)^(-1/2) exp(-i j x) for |j| <= k.
"""
import math
import re

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import toeplitz

from ..errors import NestingError
from ..galerkin import Pencil
from ..linalg import Matrix
from .base import KnownEigenvalue, ModelFamily, ReferenceData, SpectralBand


RANK_ONE_WEIGHT = 10.0
LAMBDA_1 = -1.64834270
LAMBDA_2 = 11.97518502

_N_PATTERN = re.compile(r"^n\s*=\s*(\d+)$")
_K_PATTERN = re.compile(r"^(?:k\s*=\s*)?(\d+)$")


def sawtooth(x: NDArray[np.float64]) -> NDArray[np.float64]:
    """Evaluate a(x); a(0) is taken from the left branch."""
    return np.where(x <= 0, -2 * math.pi - x, 2 * math.pi - x)


def fourier_coefficients(count: int) -> NDArray[np.complex128]:
    """
    Get d_m = (2 pi)^-1 int a(x) exp(i m x) dx for m = 0, ..., count - 1.

    Closed form: d_0 = 0 and d_m = i ((-1)^m + 2 (1 - (-1)^m)) / m.
    """
    coefficients = np.zeros(count, dtype=complex)
    m = np.arange(1, count)
    parity = np.where(m % 2 == 0, 1.0, -1.0)
    coefficients[1:] = 1j * (parity + 2 * (1 - parity)) / m
    return coefficients


class SawtoothFourierModel(ModelFamily):
    """Fourier Galerkin spaces of dimension n = 2k + 1 for the sawtooth model."""

    id = "model1"
    coarsest = 0
    refinement_flag = "k"
    default_schedule = (8, 32, 128, 512)

    def assemble(self, param: int) -> Pencil:
        """Assemble the Toeplitz-plus-rank-one pencil over v_-k, ..., v_k."""
        k = self.check_refinement(param)
        dim = 2 * k + 1
        stiffness = toeplitz(fourier_coefficients(dim))
        stiffness[k, k] += RANK_ONE_WEIGHT

        return Pencil(stiffness=stiffness, mass=np.eye(dim), label=self._label(k))

    def inclusion_matrix(self, coarse: int, fine: int) -> Matrix:
        """Select the shared Fourier modes of a coarse space in a fine one."""
        self.check_refinement(coarse)
        self.check_refinement(fine)

        if coarse > fine:
            raise NestingError(
                f"n={2 * coarse + 1} is not contained in n={2 * fine + 1}"
            )

        inclusion = np.zeros((2 * coarse + 1, 2 * fine + 1))
        rows = np.arange(2 * coarse + 1)
        inclusion[rows, rows + fine - coarse] = 1.0
        return inclusion

    def reference_spectrum(self) -> ReferenceData:
        """Get the essential spectrum and the two discrete eigenvalues."""
        return ReferenceData(
            essential_intervals=[
                SpectralBand(lower=-2 * math.pi, upper=-math.pi),
                SpectralBand(lower=math.pi, upper=2 * math.pi),
            ],
            known_eigenvalues=[
                KnownEigenvalue(value=LAMBDA_1, source="sawtooth example, lambda_1"),
                KnownEigenvalue(value=LAMBDA_2, source="sawtooth example, lambda_2"),
            ],
        )

    def check_refinement(self, param: int) -> int:
        """Require k >= 0."""
        if param < 0:
            raise NestingError(f"mode cutoff k must be >= 0, got {param}")
        return param

    def parse_refinement(self, text: str) -> int:
        """Parse `k=8`, `8` (both the cutoff k) or `n=17` (the dimension)."""
        text = text.strip()
        n_match = _N_PATTERN.match(text)

        if n_match is not None:
            n = int(n_match.group(1))
            if n % 2 == 0:
                raise NestingError(f"Fourier dimension must be odd, got n={n}")
            return (n - 1) // 2

        k_match = _K_PATTERN.match(text)
        if k_match is None:
            raise NestingError(f"cannot parse Fourier refinement {text!r}")

        return self.check_refinement(int(k_match.group(1)))

    def tag(self, param: int) -> str:
        """Format the refinement as the space dimension, like `n=17`."""
        return f"n={2 * param + 1}"

    def next_refinement(self, param: int) -> int:
        """Add one mode on each side."""
        return param + 1

    def _label(self, k: int) -> str:
        return f"{self.id} {self.tag(k)}"


def model1_assemble(k: int) -> Pencil:
    """Assemble the sawtooth pencil with 2k + 1 Fourier modes."""
    return SawtoothFourierModel().assemble(k)
