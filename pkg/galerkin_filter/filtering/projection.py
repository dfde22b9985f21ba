"""Filter a Galerkin spectral window through a fixed reference subspace."""
from logging import getLogger
from typing import Optional

import numpy as np
from scipy.linalg import solve_triangular

from ..errors import (
    DegenerateReferenceError,
    EmptyFilteredSubspaceError,
    NotPositiveDefiniteError,
    ShapeError,
    WindowTooSmallError,
)
from ..galerkin import (
    GalerkinWindow,
    Interval,
    Pencil,
    solve_galerkin,
    spectral_window,
)
from ..linalg import (
    DEFAULT_TOL,
    Matrix,
    RealVector,
    as_hermitian,
    cholesky,
    hermitian_eig,
)
from .base import (
    AutoGapPolicy,
    ExpectedDimPolicy,
    FilteredSolution,
    FilterPolicy,
    FilterSelection,
    ReferenceSubspace,
    RitzResult,
    SolveStatus,
    ThresholdPolicy,
)


log = getLogger(__name__)

RITZ_SLACK = 1e-12


def projection_matrix(
    window: GalerkinWindow, reference: ReferenceSubspace, mass: Matrix
) -> Matrix:
    """
    Get S[i, j] = <P u_j, u_i> for the orthogonal projection P onto L.

    With C = B* M U and the reference Gram G, S = C* G^-1 C. S is Hermitian
    with eigenvalues in [0, 1].
    """
    if reference.inclusion.shape[1] != window.vectors.shape[0]:
        raise ShapeError(
            f"reference {reference.label!r} lives in dimension "
            f"{reference.inclusion.shape[1]}, window in {window.vectors.shape[0]}"
        )

    if window.dim == 0:
        return np.zeros((0, 0))

    cross = reference.inclusion.conj() @ mass @ window.vectors

    try:
        factor = cholesky(reference.gram, name="reference Gram matrix")
    except NotPositiveDefiniteError as error:
        raise DegenerateReferenceError("reference basis degenerate") from error

    half = solve_triangular(factor, cross, lower=True)
    return as_hermitian(half.conj().T @ half, rtol=1e-8)


def filter_eigs(
    s_matrix: Matrix,
    policy: Optional[FilterPolicy] = None,
    interval_hint: Optional[Interval] = None,
    tol: float = DEFAULT_TOL,
) -> FilterSelection:
    """
    Eigendecompose S and keep the leading eigenvectors chosen by `policy`.

    Eigenvalues come back descending and clamped to [0, 1]. If
    `interval_hint` is given, kept eigenvalues must also lie in it.
    """
    if policy is None:
        policy = AutoGapPolicy()
    dim = s_matrix.shape[0]

    if dim == 0:
        if isinstance(policy, ExpectedDimPolicy):
            raise WindowTooSmallError("window smaller than requested dimension")
        return FilterSelection.empty(0, policy)

    spectrum = hermitian_eig(s_matrix, tol)
    sigma_p = np.clip(spectrum.values[::-1], 0.0, 1.0)
    vectors = spectrum.vectors[:, ::-1]

    kept = np.arange(_head_count(sigma_p, policy))
    if interval_hint is not None:
        hinted = [interval_hint.contains(value) for value in sigma_p[kept]]
        kept = kept[np.array(hinted, dtype=bool)]

    gamma_est = float(sigma_p[kept[-1]]) if kept.size else None
    log.debug(
        "filter %s kept %d of %d, gamma_est %s",
        policy.describe(),
        kept.size,
        dim,
        gamma_est,
    )

    return FilterSelection(
        sigma_p=sigma_p,
        selected=vectors[:, kept],
        gamma_est=gamma_est,
        policy=policy,
    )


def ritz_values(window: GalerkinWindow, selection: FilterSelection) -> RitzResult:
    """
    Get the Ritz values of the pencil on the filtered subspace.

    In window coordinates the Rayleigh quotient is W* diag(mu) W. Ritz
    vectors are returned in the fine trial basis and are mass-orthonormal.
    """
    if selection.d == 0:
        raise EmptyFilteredSubspaceError("empty filtered subspace")

    selected = selection.selected
    projected = selected.conj().T @ (window.mu[:, np.newaxis] * selected)
    spectrum = hermitian_eig(projected)
    values = _contain(spectrum.values, window.mu)

    return RitzResult(
        values=values, vectors=window.vectors @ (selected @ spectrum.vectors)
    )


def filtered_solve(
    pencil: Pencil,
    delta: Interval,
    reference: ReferenceSubspace,
    policy: Optional[FilterPolicy] = None,
    *,
    interval_hint: Optional[Interval] = None,
    tol: float = DEFAULT_TOL,
) -> FilteredSolution:
    """
    Run the whole filter on one trial space.

    Empty windows and empty selections are reported through the status
    rather than raised.
    """
    if policy is None:
        policy = AutoGapPolicy()
    spectrum = solve_galerkin(pencil, tol)
    window = spectral_window(spectrum, delta, parent=pencil.label)

    if window.dim == 0:
        log.debug("%s has no Galerkin eigenvalues in %s", pencil.label, delta)
        return FilteredSolution(
            spectrum=spectrum,
            window=window,
            s_matrix=np.zeros((0, 0)),
            selection=FilterSelection.empty(0, policy),
            ritz=None,
            status=SolveStatus.EMPTY_WINDOW,
        )

    s_matrix = projection_matrix(window, reference, pencil.mass)
    selection = filter_eigs(s_matrix, policy, interval_hint, tol)

    if selection.d == 0:
        return FilteredSolution(
            spectrum=spectrum,
            window=window,
            s_matrix=s_matrix,
            selection=selection,
            ritz=None,
            status=SolveStatus.EMPTY_SELECTION,
        )

    return FilteredSolution(
        spectrum=spectrum,
        window=window,
        s_matrix=s_matrix,
        selection=selection,
        ritz=ritz_values(window, selection),
        status=SolveStatus.OK,
    )


def _head_count(sigma_p: RealVector, policy: FilterPolicy) -> int:
    if isinstance(policy, ThresholdPolicy):
        return int(np.count_nonzero(sigma_p >= policy.threshold))

    if isinstance(policy, ExpectedDimPolicy):
        if policy.dim > sigma_p.size:
            raise WindowTooSmallError("window smaller than requested dimension")
        return int(policy.dim)

    above = int(np.count_nonzero(sigma_p >= policy.floor))
    if above == 0:
        return 0

    head = sigma_p[:above]
    ratios = head[:-1] / head[1:]
    if ratios.size and ratios.max() >= policy.min_ratio:
        return int(np.argmax(ratios)) + 1
    return above


def _contain(values: RealVector, mu: RealVector) -> RealVector:
    # Ritz values lie in [min mu, max mu]; only round-off may step outside
    low, high = float(mu.min()), float(mu.max())
    slack = RITZ_SLACK * max(1.0, float(np.max(np.abs(mu))))
    outside = (values < low - slack) | (values > high + slack)
    if outside.any():
        log.warning(
            "Ritz values %s outside window range [%s, %s]",
            values[outside],
            low,
            high,
        )
        return values
    return np.clip(values, low, high)
