"""galerkin_filter error classes."""


class GalerkinFilterError(RuntimeError):
    """Base class for every error raised by galerkin_filter."""


class NotHermitianError(GalerkinFilterError, ValueError):
    """
    Exception thrown when a matrix that should be Hermitian is not.

    Matrices are symmetrized on construction, so this is only raised when the
    input differs from its conjugate transpose by more than the relative
    tolerance, which usually means the wrong matrix was passed in.
    """


class NotPositiveDefiniteError(GalerkinFilterError, ValueError):
    """
    Exception thrown when a Cholesky factorization meets a non-positive pivot.

    The 0-based index of the failing pivot is available as `pivot`.
    """

    def __init__(self, message: str, pivot: int) -> None:
        """Initialize the error with the failing pivot index."""
        super().__init__(message)
        self.pivot = pivot


class EigenSolverError(GalerkinFilterError):
    """
    Exception thrown when a dense eigensolver fails to converge.

    `off_diagonal_norm` is the Frobenius norm of the off-diagonal part of the
    matrix in the computed eigenbasis, i.e. how far from diagonal the solver
    got before giving up.
    """

    def __init__(self, message: str, off_diagonal_norm: float) -> None:
        """Initialize the error with the off-diagonal norm reached."""
        super().__init__(message)
        self.off_diagonal_norm = off_diagonal_norm


class EmptySetError(GalerkinFilterError, ValueError):
    """Exception thrown when a set distance is requested for an empty set."""


class RankDeficientError(GalerkinFilterError, ValueError):
    """
    Exception thrown when a basis matrix does not have full column rank.

    `argument` names the offending argument.
    """

    def __init__(self, message: str, argument: str) -> None:
        """Initialize the error with the name of the deficient argument."""
        super().__init__(message)
        self.argument = argument


class ShiftError(GalerkinFilterError, ValueError):
    """
    Exception thrown when the energy-norm shift is too large.

    The shift must not exceed the smallest Galerkin eigenvalue, otherwise the
    shifted Gram matrix may be indefinite.
    """


class DegenerateReferenceError(GalerkinFilterError, ValueError):
    """Exception thrown when a reference subspace has a singular Gram matrix."""


class WindowTooSmallError(GalerkinFilterError, ValueError):
    """
    Exception thrown when a filter policy asks for more vectors than exist.

    The spectral window holds fewer Galerkin eigenvectors than the requested
    filtered dimension.
    """


class EmptyFilteredSubspaceError(GalerkinFilterError, ValueError):
    """Exception thrown when Ritz values are requested from an empty selection."""


class NestingError(GalerkinFilterError, ValueError):
    """
    Exception thrown when a reference space is not nested in a trial space.

    Inclusion matrices only exist between a coarse space and a refinement of
    it; anything else is rejected.
    """


class InvalidReferenceDimError(GalerkinFilterError, ValueError):
    """Exception thrown when a pollution check gets a non-positive dimension."""


class ShapeError(GalerkinFilterError, ValueError):
    """Exception thrown when matrix dimensions are incompatible."""


class UnknownModelError(GalerkinFilterError, ValueError):
    """Exception thrown when a model family id is not registered."""


class ScheduleError(GalerkinFilterError, ValueError):
    """Exception thrown when a refinement schedule is empty or not refining."""
