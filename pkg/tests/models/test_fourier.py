"""Tests for the Fourier sawtooth model."""
import math

import numpy as np
import pytest
from scipy.integrate import quad

from galerkin_filter.errors import NestingError
from galerkin_filter.galerkin import solve_galerkin
from galerkin_filter.models import SawtoothFourierModel, fourier, model1_assemble


def _quadrature_coefficient(m: int) -> complex:
    """Integrate (2 pi)^-1 a(x) exp(i m x) branch by branch."""

    def real_part(x: float) -> float:
        return float(fourier.sawtooth(np.array(x)) * math.cos(m * x))

    def imag_part(x: float) -> float:
        return float(fourier.sawtooth(np.array(x)) * math.sin(m * x))

    total = 0j
    for lower, upper in ((-math.pi, 0.0), (0.0, math.pi)):
        total += quad(real_part, lower, upper, epsabs=1e-13, epsrel=1e-13)[0]
        total += 1j * quad(imag_part, lower, upper, epsabs=1e-13, epsrel=1e-13)[0]

    return total / (2 * math.pi)


def test_coarsest_pencil_is_rank_one_term() -> None:
    """It should assemble the 1x1 pencil [10] for k = 0."""
    pencil = model1_assemble(0)

    assert pencil.dim == 1
    assert pencil.stiffness[0, 0] == pytest.approx(10.0)
    assert np.allclose(pencil.mass, np.eye(1))


def test_closed_form_coefficients() -> None:
    """It should produce d_1 = 3i, d_2 = i/2, d_3 = i and d_4 = i/4."""
    coefficients = fourier.fourier_coefficients(5)

    assert coefficients == pytest.approx([0, 3j, 0.5j, 1j, 0.25j], abs=1e-15)


@pytest.mark.parametrize("m", [0, 1, 2, 3, 4, 7, 12])
def test_coefficients_match_quadrature(m: int) -> None:
    """It should agree with direct integration of the sawtooth."""
    closed_form = fourier.fourier_coefficients(m + 1)[m]

    assert closed_form == pytest.approx(_quadrature_coefficient(m), abs=1e-9)


def test_stiffness_is_toeplitz_plus_rank_one() -> None:
    """It should place d_(j-k) at [j, k] and the rank-one term at the center."""
    pencil = model1_assemble(3)
    coefficients = fourier.fourier_coefficients(7)

    assert pencil.stiffness[1, 0] == pytest.approx(coefficients[1])
    assert pencil.stiffness[0, 1] == pytest.approx(np.conj(coefficients[1]))
    assert pencil.stiffness[6, 2] == pytest.approx(coefficients[4])
    assert pencil.stiffness[3, 3] == pytest.approx(10.0)
    assert pencil.stiffness[2, 2] == pytest.approx(0.0)


def test_stiffness_is_exactly_hermitian() -> None:
    """It should hold d_(-m) = conj(d_m) exactly."""
    stiffness = model1_assemble(16).stiffness

    assert np.array_equal(stiffness, stiffness.conj().T)


def test_galerkin_eigenvalues_are_bounded() -> None:
    """It should keep every Galerkin eigenvalue within 2 pi + 10."""
    for k in (0, 4, 32, 128):
        values = solve_galerkin(model1_assemble(k)).values
        assert np.all(np.abs(values) <= 2 * math.pi + 10 + 1e-9)


def test_inclusion_selects_shared_modes(sawtooth: SawtoothFourierModel) -> None:
    """It should select v_0 from the one-mode space."""
    inclusion = sawtooth.inclusion_matrix(0, 4)
    expected = np.zeros((1, 9))
    expected[0, 4] = 1.0

    assert np.array_equal(inclusion, expected)


def test_inclusion_is_consistent_with_assembly(sawtooth: SawtoothFourierModel) -> None:
    """It should restrict the fine pencil to the coarse one."""
    inclusion = sawtooth.inclusion_matrix(3, 4)
    coarse = sawtooth.assemble(3)
    fine = sawtooth.assemble(4)

    restricted = inclusion.conj() @ fine.stiffness @ inclusion.T
    assert np.allclose(restricted, coarse.stiffness, atol=1e-12)
    assert np.allclose(inclusion @ fine.mass @ inclusion.T, coarse.mass, atol=1e-12)


def test_inclusion_rejects_non_nested(sawtooth: SawtoothFourierModel) -> None:
    """It should raise when the coarse space is larger than the fine one."""
    with pytest.raises(NestingError):
        sawtooth.inclusion_matrix(5, 4)


@pytest.mark.parametrize(
    ("text", "expected"), [("k=8", 8), ("8", 8), ("n=17", 8), (" n = 1 ", 0)]
)
def test_parse_refinement(
    sawtooth: SawtoothFourierModel, text: str, expected: int
) -> None:
    """It should parse mode cutoffs and odd dimensions."""
    assert sawtooth.parse_refinement(text) == expected


@pytest.mark.parametrize("text", ["n=16", "k=-1", "1/8", ""])
def test_parse_refinement_rejects_garbage(
    sawtooth: SawtoothFourierModel, text: str
) -> None:
    """It should raise a NestingError for unusable refinements."""
    with pytest.raises(NestingError):
        sawtooth.parse_refinement(text)


def test_tags_and_refinement(sawtooth: SawtoothFourierModel) -> None:
    """It should tag by dimension and refine by one mode per side."""
    assert sawtooth.tag(8) == "n=17"
    assert sawtooth.next_refinement(8) == 9
    assert sawtooth.default_schedule == (8, 32, 128, 512)


def test_reference_spectrum(sawtooth: SawtoothFourierModel) -> None:
    """It should place lambda_1 in the gap of the essential spectrum."""
    reference = sawtooth.reference_spectrum()
    lower, upper = reference.essential_intervals

    assert (lower.lower, lower.upper) == pytest.approx((-2 * math.pi, -math.pi))
    assert (upper.lower, upper.upper) == pytest.approx((math.pi, 2 * math.pi))
    assert -math.pi < fourier.LAMBDA_1 < math.pi
    assert [item.value for item in reference.known_eigenvalues] == [
        -1.64834270,
        11.97518502,
    ]
