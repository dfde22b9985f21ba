"""Dense Hermitian linear algebra used by every other module."""
from __future__ import annotations
from dataclasses import dataclass
from logging import getLogger
from typing import Any, Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import (
    LinAlgError,
    eigh,
    eigvalsh,
    get_lapack_funcs,
    solve_triangular,
    svdvals,
)

from .errors import (
    EigenSolverError,
    EmptySetError,
    NotHermitianError,
    NotPositiveDefiniteError,
    RankDeficientError,
    ShapeError,
)


Matrix = NDArray[Any]
RealVector = NDArray[np.float64]

DEFAULT_TOL = 1e-10
HERMITIAN_RTOL = 1e-12
RANK_RTOL = 1e-12

log = getLogger(__name__)


@dataclass(frozen=True)
class EigDecomposition:
    """
    Eigenpairs of a Hermitian matrix or pencil.

    `values` are ascending; column `j` of `vectors` belongs to `values[j]`
    and the columns are orthonormal in the inner product of the problem
    (Euclidean for `hermitian_eig`, mass-weighted for `generalized_eig`).
    """

    values: RealVector
    vectors: Matrix

    @property
    def dim(self) -> int:
        """Get the number of eigenpairs."""
        return int(self.values.shape[0])


def as_hermitian(matrix: ArrayLike, *, rtol: float = HERMITIAN_RTOL) -> Matrix:
    """
    Validate and symmetrize a square Hermitian matrix.

    Real input stays real. The result is exactly Hermitian, so diagonal
    entries have zero imaginary part.
    """
    array = np.array(matrix)
    array = array.astype(np.result_type(array.dtype, np.float64), copy=False)

    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {array.shape}")

    deviation = np.linalg.norm(array - array.conj().T)
    scale = np.linalg.norm(array)

    if deviation > rtol * scale:
        raise NotHermitianError(
            f"matrix is not Hermitian (deviation {deviation:.3e}, norm {scale:.3e})"
        )

    return _symmetrize(array)


def hermitian_eig(matrix: ArrayLike, tol: float = DEFAULT_TOL) -> EigDecomposition:
    """Compute the full eigendecomposition of a Hermitian matrix."""
    hermitian = as_hermitian(matrix)

    try:
        values, vectors = eigh(hermitian)
    except LinAlgError as error:
        off_norm = _off_diagonal_norm(hermitian)
        log.debug("eigh failed on %s matrix", hermitian.shape, exc_info=error)
        raise EigenSolverError(
            f"eigensolver did not converge (off-diagonal norm {off_norm:.3e})",
            off_diagonal_norm=off_norm,
        ) from error

    vectors = normalize_phases(vectors)
    _check_residuals(hermitian, None, values, vectors, tol)

    return EigDecomposition(values=np.asarray(values, dtype=float), vectors=vectors)


def cholesky(matrix: ArrayLike, *, name: str = "mass matrix") -> Matrix:
    """
    Factor a Hermitian positive definite matrix as R R* with R lower triangular.

    Uses LAPACK potrf directly so the failing pivot can be reported.
    """
    hermitian = as_hermitian(matrix)
    (potrf,) = get_lapack_funcs(("potrf",), (hermitian,))
    factor, info = potrf(hermitian, lower=True, clean=True, overwrite_a=False)

    if info > 0:
        pivot = int(info) - 1
        raise NotPositiveDefiniteError(
            f"{name} not positive definite (pivot {pivot})", pivot=pivot
        )

    return np.tril(factor)


def generalized_eig(
    a_matrix: ArrayLike, m_matrix: ArrayLike, tol: float = DEFAULT_TOL
) -> EigDecomposition:
    """
    Solve the Hermitian-definite pencil A u = mu M u.

    The pencil is reduced with the Cholesky factor of M; the returned
    vectors are M-orthonormal.
    """
    a_herm = as_hermitian(a_matrix)
    m_herm = as_hermitian(m_matrix)

    if a_herm.shape != m_herm.shape:
        raise ShapeError(
            f"pencil matrices differ in shape: {a_herm.shape} vs {m_herm.shape}"
        )

    factor = cholesky(m_herm)
    half = solve_triangular(factor, a_herm, lower=True)
    reduced = solve_triangular(factor, half.conj().T, lower=True).conj().T

    try:
        values, reduced_vectors = eigh(_symmetrize(reduced))
    except LinAlgError as error:
        off_norm = _off_diagonal_norm(reduced)
        log.debug("eigh failed on reduced pencil", exc_info=error)
        raise EigenSolverError(
            f"eigensolver did not converge (off-diagonal norm {off_norm:.3e})",
            off_diagonal_norm=off_norm,
        ) from error

    vectors = solve_triangular(factor, reduced_vectors, lower=True, trans="C")
    vectors = normalize_phases(vectors)
    _check_residuals(a_herm, m_herm, values, vectors, tol)

    return EigDecomposition(values=np.asarray(values, dtype=float), vectors=vectors)


def hausdorff_distance(first: ArrayLike, second: ArrayLike) -> float:
    """Get the Hausdorff distance between two finite sets of reals."""
    x = np.asarray(first, dtype=float).ravel()
    y = np.asarray(second, dtype=float).ravel()

    if x.size == 0 or y.size == 0:
        raise EmptySetError("Hausdorff undefined for empty set")

    distances = np.abs(x[:, np.newaxis] - y[np.newaxis, :])

    return float(max(distances.min(axis=1).max(), distances.min(axis=0).max()))


def g_orthonormalize(basis: ArrayLike, gram: ArrayLike, *, name: str = "U") -> Matrix:
    """
    Get a G-orthonormal basis for the column span of `basis`.

    Raises RankDeficientError naming `name` if the columns are dependent.
    """
    columns = np.asarray(basis)
    if columns.ndim == 1:
        columns = columns[:, np.newaxis]

    inner = _symmetrize(columns.conj().T @ np.asarray(gram) @ columns)

    if columns.shape[1] == 0:
        return columns

    spectrum = eigvalsh(inner)
    if spectrum[0] <= RANK_RTOL * max(spectrum[-1], 0.0):
        raise RankDeficientError(f"{name} does not have full column rank", name)

    factor = cholesky(inner, name=f"Gram matrix of {name}")
    return solve_triangular(factor, columns.conj().T, lower=True).conj().T


def subspace_gap(u_basis: ArrayLike, v_basis: ArrayLike, gram: ArrayLike) -> float:
    """
    Get the one-sided gap delta(span U, span V) in the G-inner product.

    This is sup over unit u in span U of dist(u, span V), i.e. the largest
    singular value of (I - Pi_V) Pi_U, and lies in [0, 1].
    """
    g = as_hermitian(gram)
    g_factor = cholesky(g, name="Gram matrix")
    q_u = g_orthonormalize(u_basis, g, name="U")
    q_v = g_orthonormalize(v_basis, g, name="V")

    if q_u.shape[1] == 0:
        return 0.0

    if q_v.shape[1] == 0:
        return 1.0

    residual = q_u - q_v @ (q_v.conj().T @ g @ q_u)
    largest = svdvals(g_factor.conj().T @ residual)[0]

    return float(min(max(largest, 0.0), 1.0))


def symmetric_gap(u_basis: ArrayLike, v_basis: ArrayLike, gram: ArrayLike) -> float:
    """Get the two-sided gap, the larger of both one-sided gaps."""
    return max(
        subspace_gap(u_basis, v_basis, gram), subspace_gap(v_basis, u_basis, gram)
    )


def normalize_phases(vectors: Matrix) -> Matrix:
    """
    Make the largest-modulus entry of every column real and positive.

    Ties between entries of equal modulus go to the first one.
    """
    if vectors.size == 0:
        return vectors

    pivot_rows = np.argmax(np.abs(vectors), axis=0)
    pivots = vectors[pivot_rows, np.arange(vectors.shape[1])]
    phases = pivots / np.abs(pivots)

    return vectors * phases.conj()[np.newaxis, :]


def _symmetrize(matrix: Matrix) -> Matrix:
    return (matrix + matrix.conj().T) / 2


def _off_diagonal_norm(matrix: Matrix) -> float:
    return float(np.linalg.norm(matrix - np.diag(np.diag(matrix))))


def _check_residuals(
    a_matrix: Matrix,
    m_matrix: Optional[Matrix],
    values: NDArray[Any],
    vectors: Matrix,
    tol: float,
) -> None:
    m_vectors = vectors if m_matrix is None else m_matrix @ vectors
    residuals = np.linalg.norm(a_matrix @ vectors - m_vectors * values, axis=0)

    # the 1-norm bounds the spectral norm of a Hermitian matrix
    a_norm = np.linalg.norm(a_matrix, ord=1)
    m_norm = 1.0 if m_matrix is None else np.linalg.norm(m_matrix, ord=1)
    scale = np.linalg.norm(vectors, axis=0)
    bounds = tol * (a_norm + np.abs(values) * m_norm) * scale

    if np.any(residuals > bounds):
        off_norm = _off_diagonal_norm(vectors.conj().T @ a_matrix @ vectors)
        worst = int(np.argmax(residuals - bounds))
        raise EigenSolverError(
            f"eigenpair {worst} misses the residual bound "
            f"({residuals[worst]:.3e} > {bounds[worst]:.3e})",
            off_diagonal_norm=off_norm,
        )
