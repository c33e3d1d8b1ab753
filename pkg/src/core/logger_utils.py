"""Structured logging for omfp, built on structlog with a rich console handler."""

import logging
import sys

import structlog
from rich.console import Console
from rich.logging import RichHandler

# Diagnostics go to stderr so CSV written to stdout stays clean
console = Console(stderr=True)

_configured_level: int | None = None


def _stderr_logger(*_args: object) -> structlog.PrintLogger:
    # resolved per call: sys.stderr may be swapped after configuration
    return structlog.PrintLogger(file=sys.stderr)


def configure_logger(log_level: str = "INFO") -> None:
    """
    Configure stdlib logging and structlog once per process level.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
    """
    global _configured_level

    numeric_level = getattr(logging, log_level.upper(), logging.INFO)
    if _configured_level == numeric_level:
        return

    logging.basicConfig(
        level=numeric_level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(rich_tracebacks=True, console=console, show_time=True, show_path=False)],
        force=True,
    )
    logging.captureWarnings(True)

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.StackInfoRenderer(),
            structlog.dev.set_exc_info,
            structlog.processors.TimeStamper(fmt="%Y-%m-%d %H:%M:%S", utc=False),
            structlog.dev.ConsoleRenderer(colors=console.is_terminal),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        context_class=dict,
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )
    _configured_level = numeric_level


def get_logger(name: str, log_level: str | None = None) -> structlog.BoundLogger:
    """
    Get a structlog logger bound to ``name``.

    Args:
        name: Name for the logger (usually __name__)
        log_level: Optional level; defaults to ``settings.LOG_LEVEL``

    Returns:
        A configured structlog BoundLogger instance

    Example:
        >>> logger = get_logger(__name__)
        >>> logger.info("Stationary state solved", n=10000, residual=1e-15)
    """
    if log_level is None:
        from core.config import settings

        log_level = settings.LOG_LEVEL
    configure_logger(log_level)
    return structlog.get_logger(name)
