"""Error handlers for the command-line boundary.

Exceptions that reach a command are logged once with a severity chosen from
their family and turned into a process exit code plus a one-line
diagnostic on stderr.
"""

from typing import Optional, TextIO

import click
from pydantic import ValidationError as PydanticValidationError

from .exceptions import ConfigurationError, DomainException, ValidationError
from .logging.error_logger import error_logger

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE_ERROR = 2


def as_domain_error(exc: PydanticValidationError, key: str = "config") -> ConfigurationError:
    """Wrap a pydantic validation failure (config, DTO or input file)."""
    first = exc.errors()[0] if exc.errors() else {}
    location = ".".join(str(part) for part in first.get("loc", ())) or key
    return ConfigurationError(location, f"Invalid value for '{location}': {first.get('msg', exc)}")


def diagnostic(exc: BaseException) -> str:
    """Single-line message for the error stream."""
    if isinstance(exc, DomainException):
        text = f"error[{exc.error_code}]: {exc.message}"
    else:
        text = f"error[{exc.__class__.__name__}]: {exc}"
    return " ".join(text.split())


def exit_code_for(exc: BaseException) -> int:
    """Exit code of an exception escaping a command."""
    if isinstance(exc, click.UsageError):
        return EXIT_USAGE_ERROR
    if isinstance(exc, click.exceptions.Exit):
        return exc.exit_code
    return EXIT_DOMAIN_ERROR


def handle_command_error(exc: BaseException, stream: Optional[TextIO] = None) -> int:
    """Log an exception, print its diagnostic and return the exit code."""
    if isinstance(exc, PydanticValidationError):
        exc = as_domain_error(exc)
    if isinstance(exc, click.UsageError):
        exc.show(file=stream)
        return EXIT_USAGE_ERROR

    if isinstance(exc, ValidationError):
        error_logger.log_error(exc, severity="WARNING")
    elif isinstance(exc, DomainException):
        error_logger.log_error(exc)
    else:
        error_logger.log_error(exc, severity="CRITICAL", include_traceback=True)
    click.echo(diagnostic(exc), err=True, file=stream)
    return exit_code_for(exc)

