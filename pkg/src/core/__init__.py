"""Core module for omfp: settings, errors and logging."""

from core.config import settings
from core.errors import (
    DivergenceError,
    DomainError,
    ImproperlyConfigured,
    InsufficientDataError,
    NegativeDampingError,
    NoStableEquilibriumError,
    OmfpBaseException,
    OmfpWarning,
    PreconditionError,
    PremiseWarning,
    RegimeWarning,
    SolverError,
    WindowWarning,
)
from core.logger_utils import get_logger

__version__ = "0.1.0"

__all__ = [
    "settings",
    "OmfpBaseException",
    "ImproperlyConfigured",
    "PreconditionError",
    "DomainError",
    "InsufficientDataError",
    "NegativeDampingError",
    "NoStableEquilibriumError",
    "DivergenceError",
    "SolverError",
    "OmfpWarning",
    "RegimeWarning",
    "WindowWarning",
    "PremiseWarning",
    "get_logger",
    "__version__",
]
