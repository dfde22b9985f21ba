"""Tests for the projection matrix, the spectral filter and Ritz values."""
import logging
import math

import numpy as np
import pytest

from galerkin_filter.errors import (
    DegenerateReferenceError,
    EmptyFilteredSubspaceError,
    RankDeficientError,
    ShapeError,
    WindowTooSmallError,
)
from galerkin_filter.filtering import (
    AutoGapPolicy,
    ExpectedDimPolicy,
    FilterSelection,
    ReferenceSubspace,
    SolveStatus,
    ThresholdPolicy,
    filter_eigs,
    filtered_solve,
    projection_matrix,
    ritz_values,
)
from galerkin_filter.galerkin import (
    GalerkinWindow,
    Interval,
    Pencil,
    solve_galerkin,
    spectral_window,
)
from galerkin_filter.models import (
    AdvectionBlockModel,
    MHDBlockModel,
    model2_assemble,
    model3_assemble,
)
from ..helpers import direct_projection, random_problem


def _diagonal(*values: float) -> Pencil:
    return Pencil(stiffness=np.diag(values), mass=np.eye(len(values)), label="toy")


def _window(pencil: Pencil, a: float, b: float) -> GalerkinWindow:
    return spectral_window(solve_galerkin(pencil), Interval(a=a, b=b))


def test_projection_onto_whole_space_is_identity() -> None:
    """It should return the identity when L contains the window."""
    pencil = _diagonal(1, 2, 3)
    reference = ReferenceSubspace(inclusion=np.eye(3), gram=np.eye(3))

    s_matrix = projection_matrix(_window(pencil, 0, 4), reference, pencil.mass)

    assert np.allclose(s_matrix, np.eye(3), atol=1e-14)


def test_projection_onto_orthogonal_space_is_zero() -> None:
    """It should return zero when L is orthogonal to the window."""
    pencil = _diagonal(1, 2, 3)
    reference = ReferenceSubspace(inclusion=np.array([[1.0, 0, 0]]), gram=np.eye(1))

    s_matrix = projection_matrix(_window(pencil, 1.5, 3.5), reference, pencil.mass)

    assert np.allclose(s_matrix, np.zeros((2, 2)), atol=1e-14)


def test_projection_onto_diagonal_line() -> None:
    """It should give |<u, v>|^2 / |v|^2 for a one-dimensional L."""
    pencil = _diagonal(1, 2, 3)
    reference = ReferenceSubspace.nested(np.ones((1, 3)), pencil.mass)

    s_matrix = projection_matrix(_window(pencil, 0.5, 1.5), reference, pencil.mass)

    assert s_matrix == pytest.approx(np.array([[1 / 3]]))


def test_projection_of_empty_window() -> None:
    """It should return a 0x0 matrix for an empty window."""
    pencil = _diagonal(1, 2, 3)
    reference = ReferenceSubspace(inclusion=np.eye(3), gram=np.eye(3))

    s_matrix = projection_matrix(_window(pencil, 10, 11), reference, pencil.mass)

    assert s_matrix.shape == (0, 0)


@pytest.mark.parametrize("gram", [[[0.0]], [[-1.0]]])
def test_projection_rejects_degenerate_gram(gram: list) -> None:
    """It should raise if the reference Gram matrix is not positive definite."""
    pencil = _diagonal(1, 2, 3)
    reference = ReferenceSubspace(inclusion=np.array([[1.0, 0, 0]]), gram=gram)

    with pytest.raises(DegenerateReferenceError, match="reference basis degenerate"):
        projection_matrix(_window(pencil, 0, 4), reference, pencil.mass)


def test_projection_rejects_mismatched_reference() -> None:
    """It should raise if L lives in a different trial space."""
    pencil = _diagonal(1, 2, 3)
    reference = ReferenceSubspace(inclusion=np.eye(2), gram=np.eye(2))

    with pytest.raises(ShapeError):
        projection_matrix(_window(pencil, 0, 4), reference, pencil.mass)


def test_reference_subspace_rejects_dependent_rows() -> None:
    """It should require a linearly independent reference basis."""
    with pytest.raises(RankDeficientError) as e:
        ReferenceSubspace(inclusion=np.ones((2, 3)), gram=np.eye(2), label="bad")

    assert e.value.argument == "inclusion"


@pytest.mark.parametrize("seed", range(50))
def test_projection_matches_explicit_projector(seed: int) -> None:
    """It should agree with S built entrywise from an explicit projector."""
    rng = np.random.default_rng(seed)
    dim = int(rng.integers(2, 9))
    dim_l = int(rng.integers(1, dim + 1))
    pencil, inclusion = random_problem(rng, dim, dim_l)
    values = solve_galerkin(pencil).values
    window = _window(pencil, values[0] - 1, values[dim // 2])
    reference = ReferenceSubspace.nested(inclusion, pencil.mass)

    s_matrix = projection_matrix(window, reference, pencil.mass)
    expected = direct_projection(window.vectors, inclusion.T, pencil.mass)

    assert np.allclose(s_matrix, expected, atol=1e-10)

    eigenvalues = np.linalg.eigvalsh(s_matrix)
    assert np.all(eigenvalues >= -1e-10)
    assert np.all(eigenvalues <= 1 + 1e-10)
    assert np.linalg.matrix_rank(s_matrix, tol=1e-8) <= dim_l


def test_filter_auto_gap_splits_at_largest_ratio() -> None:
    """It should keep the head above the zero cluster."""
    selection = filter_eigs(np.diag([1.0, 0.4, 1e-12]))

    assert selection.d == 2
    assert selection.gamma_est == pytest.approx(0.4)
    assert selection.sigma_p == pytest.approx([1.0, 0.4, 1e-12])


def test_filter_auto_gap_splits_inside_head() -> None:
    """It should split at a large ratio inside the values above the floor."""
    selection = filter_eigs(np.diag([0.9, 0.8, 1e-5, 1e-6]))

    assert selection.d == 2
    assert selection.gamma_est == pytest.approx(0.8)


def test_filter_auto_gap_ignores_small_head_ratios() -> None:
    """It should not split off the lowest value above the floor by default."""
    selection = filter_eigs(np.diag([1.0, 0.5, 0.1, 1e-12]))

    assert selection.d == 3
    assert selection.gamma_est == pytest.approx(0.1)


def test_filter_auto_gap_splits_head_from_small_values() -> None:
    """It should drop values far below the head even when above the floor."""
    selection = filter_eigs(np.diag([1.0, 0.5, 1e-3, 1e-12]))

    assert selection.d == 2
    assert selection.gamma_est == pytest.approx(0.5)


def test_filter_auto_gap_min_ratio() -> None:
    """It should split at a smaller ratio when asked to."""
    selection = filter_eigs(
        np.diag([1.0, 0.5, 0.1, 1e-12]), AutoGapPolicy(min_ratio=5.0)
    )

    assert selection.d == 2
    assert selection.gamma_est == pytest.approx(0.5)


def test_filter_auto_gap_with_nothing_above_floor() -> None:
    """It should select nothing when every value is in the zero cluster."""
    selection = filter_eigs(np.diag([1e-10, 1e-12]), AutoGapPolicy())

    assert selection.d == 0
    assert selection.gamma_est is None
    assert selection.selected.shape == (2, 0)


def test_filter_expected_dim() -> None:
    """It should keep exactly the requested number of eigenvectors."""
    selection = filter_eigs(np.diag([1.0, 0.4, 1e-12]), ExpectedDimPolicy(dim=1))

    assert selection.d == 1
    assert selection.gamma_est == pytest.approx(1.0)


@pytest.mark.parametrize("s_matrix", [np.diag([1.0, 0.4, 1e-12]), np.zeros((0, 0))])
def test_filter_expected_dim_too_large(s_matrix: np.ndarray) -> None:
    """It should raise if the window is smaller than the expected dimension."""
    with pytest.raises(WindowTooSmallError, match="window smaller"):
        filter_eigs(s_matrix, ExpectedDimPolicy(dim=4))


def test_filter_threshold() -> None:
    """It should keep eigenvalues at or above the threshold."""
    s_matrix = np.diag([1.0, 0.5, 0.4])

    assert filter_eigs(s_matrix, ThresholdPolicy(threshold=0.5)).d == 2
    assert filter_eigs(s_matrix, ThresholdPolicy(threshold=0.0)).d == 3


def test_filter_interval_hint_restricts_selection() -> None:
    """It should drop kept values outside the hint."""
    selection = filter_eigs(
        np.diag([1.0, 0.4, 0.1]),
        ThresholdPolicy(threshold=0.0),
        interval_hint=Interval(a=0.3, b=0.5),
    )

    assert selection.d == 1
    assert selection.gamma_est == pytest.approx(0.4)
    assert np.allclose(np.abs(selection.selected[:, 0]), [0, 1, 0])


def test_filter_clamps_to_unit_interval() -> None:
    """It should clamp round-off outside [0, 1]."""
    selection = filter_eigs(np.diag([-1e-13, 0.5, 1 + 1e-13]))

    assert list(selection.sigma_p) == [1.0, 0.5, 0.0]


def test_filter_of_empty_matrix() -> None:
    """It should return an empty selection for an empty window."""
    selection = filter_eigs(np.zeros((0, 0)))

    assert selection.d == 0
    assert selection.sigma_p.size == 0


def test_filter_selected_vectors_are_orthonormal(rng: np.random.Generator) -> None:
    """It should return orthonormal eigenvectors of S."""
    pencil, inclusion = random_problem(rng, 8, 4)
    reference = ReferenceSubspace.nested(inclusion, pencil.mass)
    window = _window(pencil, -100, 100)
    s_matrix = projection_matrix(window, reference, pencil.mass)

    selection = filter_eigs(s_matrix, ThresholdPolicy(threshold=0.0))
    selected = selection.selected

    assert selection.d == 8
    assert np.allclose(selected.conj().T @ selected, np.eye(8), atol=1e-10)
    assert np.allclose(
        s_matrix @ selected, selected * selection.sigma_p, atol=1e-10
    )


def test_ritz_values_on_mixed_vector() -> None:
    """It should return the Rayleigh quotient on the filtered subspace."""
    window = GalerkinWindow(
        mu=np.array([1.0, 2.0, 3.0]),
        vectors=np.eye(3),
        parent="toy",
        interval=Interval(a=0, b=4),
    )
    selection = FilterSelection(
        sigma_p=np.ones(3),
        selected=np.array([[1.0], [1.0], [0.0]]) / math.sqrt(2),
        gamma_est=1.0,
        policy=ThresholdPolicy(threshold=1.0),
    )

    result = ritz_values(window, selection)

    assert result.values == pytest.approx([1.5])
    assert np.allclose(np.abs(result.vectors[:, 0]), np.array([1, 1, 0]) / math.sqrt(2))


def _ritz_on_column(column: list) -> np.ndarray:
    window = GalerkinWindow(
        mu=np.array([1.0, 2.0, 3.0]),
        vectors=np.eye(3),
        parent="toy",
        interval=Interval(a=0, b=4),
    )
    selection = FilterSelection(
        sigma_p=np.ones(3),
        selected=np.array([column]).T,
        gamma_est=1.0,
        policy=ThresholdPolicy(threshold=1.0),
    )
    return ritz_values(window, selection).values


def test_ritz_values_clip_round_off() -> None:
    """It should pull values just past the window range back onto it."""
    values = _ritz_on_column([0.0, 0.0, 1.0 + 1e-14])

    assert values[0] == 3.0


def test_ritz_values_keep_containment_violations(
    caplog: pytest.LogCaptureFixture,
) -> None:
    """It should warn about and keep values well outside the window range."""
    with caplog.at_level(logging.WARNING, logger="galerkin_filter"):
        values = _ritz_on_column([2.0, 0.0, 0.0])

    assert values == pytest.approx([4.0])
    assert "outside window range" in caplog.text


def test_ritz_values_reject_empty_selection() -> None:
    """It should raise for an empty filtered subspace."""
    window = GalerkinWindow(
        mu=np.array([1.0]), vectors=np.eye(1), parent="", interval=Interval(a=0, b=2)
    )

    with pytest.raises(EmptyFilteredSubspaceError, match="empty filtered subspace"):
        ritz_values(window, FilterSelection.empty(1, AutoGapPolicy()))


def test_filtered_solve_without_pollution() -> None:
    """It should reproduce the Galerkin eigenvalues when L is the whole space."""
    pencil = _diagonal(1, 2, 3, 4)
    reference = ReferenceSubspace(inclusion=np.eye(4), gram=np.eye(4))

    solution = filtered_solve(pencil, Interval(a=0.5, b=4.5), reference)

    assert solution.status == SolveStatus.OK
    assert solution.selection.d == 4
    assert solution.ritz is not None
    assert solution.ritz.values == pytest.approx(solution.window.mu)


def test_filtered_solve_with_multiplicity() -> None:
    """It should keep one direction of a double eigenvalue."""
    pencil = _diagonal(1, 3, 3, 5)
    reference = ReferenceSubspace.nested(np.array([[0.0, 1.0, 1.0, 0.0]]), pencil.mass)

    solution = filtered_solve(pencil, Interval(a=2, b=4), reference)

    assert solution.window.dim == 2
    assert solution.selection.d == 1
    assert solution.ritz is not None
    assert solution.ritz.values == pytest.approx([3.0])


def test_filtered_solve_with_empty_window() -> None:
    """It should report an empty window instead of raising."""
    pencil = _diagonal(1, 2, 3)
    reference = ReferenceSubspace(inclusion=np.eye(3), gram=np.eye(3))

    solution = filtered_solve(pencil, Interval(a=10, b=11), reference)

    assert solution.status == SolveStatus.EMPTY_WINDOW
    assert solution.s_matrix.shape == (0, 0)
    assert solution.ritz is None


def test_filtered_solve_with_empty_selection() -> None:
    """It should report an empty selection when S vanishes."""
    pencil = _diagonal(1, 2, 3, 4)
    reference = ReferenceSubspace(inclusion=np.array([[1.0, 0, 0, 0]]), gram=np.eye(1))

    solution = filtered_solve(pencil, Interval(a=2.5, b=4.5), reference)

    assert solution.status == SolveStatus.EMPTY_SELECTION
    assert solution.ritz is None
    assert solution.selection.sigma_p == pytest.approx([0.0, 0.0])


def test_filtered_solve_on_advection(advection: AdvectionBlockModel) -> None:
    """It should recover 2 and lambda_1^+ at h = 1/64."""
    pencil = model2_assemble("1/64")
    reference = ReferenceSubspace.nested(
        advection.inclusion_matrix(2, 64), pencil.mass, label="h=1/2"
    )

    solution = filtered_solve(
        pencil, Interval(a=1.001, b=12.0), reference, ExpectedDimPolicy(dim=2)
    )

    assert solution.ritz is not None
    values = sorted(solution.ritz.values)
    assert values[0] == pytest.approx(2.0, abs=1e-9)
    assert values[1] == pytest.approx(10.96960440, abs=1e-5)
    assert solution.window.dim > 2


def test_filtered_solve_on_mhd_lower_gap(mhd: MHDBlockModel) -> None:
    """It should recover the lower gap eigenvalue at h = 1/64."""
    pencil = model3_assemble("1/64")
    reference = ReferenceSubspace.nested(mhd.inclusion_matrix(2, 64), pencil.mass)

    solution = filtered_solve(
        pencil,
        Interval(a=1 / 4 + 0.001, b=3 / 8 - 0.001),
        reference,
        ExpectedDimPolicy(dim=1),
    )

    assert solution.ritz is not None
    assert solution.ritz.values == pytest.approx([0.27912106], abs=1e-4)
