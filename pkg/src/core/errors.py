"""Custom exceptions and warnings for the omfp project."""


class OmfpBaseException(Exception):
    """Base exception for all omfp errors."""

    exit_code: int = 1


class ImproperlyConfigured(OmfpBaseException):
    """Raised when settings, a config file or a sweep axis are invalid."""

    exit_code = 2


class PreconditionError(OmfpBaseException):
    """Raised when an operation is called outside the parameter set it is defined for."""

    exit_code = 2


class DomainError(OmfpBaseException):
    """Raised when an argument lies outside a function's domain."""

    exit_code = 2


class InsufficientDataError(OmfpBaseException):
    """Raised when an estimator gets fewer samples than it needs."""

    exit_code = 2


class NegativeDampingError(OmfpBaseException):
    """Raised when the total damping at an equilibrium is not positive."""

    exit_code = 3


class NoStableEquilibriumError(OmfpBaseException):
    """Raised when no damped stable equilibrium exists."""

    exit_code = 3


class DivergenceError(OmfpBaseException):
    """Raised when a trajectory leaves the guard radius."""

    exit_code = 3


class SolverError(OmfpBaseException):
    """Raised when a sparse solve or a quadrature fails."""

    exit_code = 4


class OmfpWarning(UserWarning):
    """Base warning for omfp."""


class RegimeWarning(OmfpWarning):
    """Parameters lie outside the bad-cavity regime the model assumes."""


class WindowWarning(OmfpWarning):
    """The phase-space window holds non-negligible mass on its edges."""


class PremiseWarning(OmfpWarning):
    """An approximation is used where its premise does not hold well."""


class DiscretizationWarning(OmfpWarning):
    """The grid does not resolve the stationary state well enough for the chosen stencil."""
