"""Error logging utilities with structured logging and context.

Every error that reaches the command boundary is logged here once, with
its severity chosen from the exception family and the run context attached.
"""

import json
import logging
import traceback
from contextlib import contextmanager
from typing import Any, Iterator, Optional

from .structured_logger import command_context, current_run, get_logger, run_id_context


class StructuredErrorLogger:
    """Structured error logger with context and severity management."""

    def __init__(self, logger_name: str = "error_logger"):
        self.logger_name = logger_name

    @property
    def logger(self):
        return get_logger(self.logger_name)

    def _get_context_data(self) -> dict[str, Any]:
        return current_run()

    def _create_log_data(
        self,
        exception: Exception,
        context: Optional[dict[str, Any]] = None,
    ) -> dict[str, Any]:
        log_data: dict[str, Any] = {
            "error": {
                "type": exception.__class__.__name__,
                "message": str(exception),
                "module": exception.__class__.__module__,
            },
            "context": self._get_context_data(),
        }

        if hasattr(exception, "error_code") and hasattr(exception, "error_id"):
            log_data["error"].update(
                {
                    "error_code": getattr(exception, "error_code", None),
                    "error_id": getattr(exception, "error_id", None),
                    "domain_context": getattr(exception, "context", None),
                }
            )

        if "numerical" in exception.__class__.__module__.lower():
            log_data["error"]["numerical_error"] = True

        if context:
            log_data["context"].update(context)

        return log_data

    def severity_for(self, exception: Exception) -> str:
        """Choose a severity from the exception family."""
        from ..exceptions import DomainException, NumericalError, ValidationError

        if isinstance(exception, ValidationError):
            return "WARNING"
        if isinstance(exception, NumericalError):
            return "ERROR"
        if isinstance(exception, DomainException):
            return "WARNING"
        return "CRITICAL"

    def log_error(
        self,
        exception: Exception,
        severity: Optional[str] = None,
        context: Optional[dict[str, Any]] = None,
        include_traceback: bool = False,
    ) -> None:
        """Log an error with structured data and appropriate severity.

        Args:
            exception: The exception to log
            severity: Log severity; derived from the exception type if omitted
            context: Additional context data
            include_traceback: Whether to include the formatted traceback
        """
        log_data = self._create_log_data(exception, context)
        if include_traceback:
            log_data["traceback"] = "".join(
                traceback.format_exception(
                    type(exception), exception, exception.__traceback__
                )
            )

        level_name = (severity or self.severity_for(exception)).upper()
        log_level = getattr(logging, level_name, logging.ERROR)
        self.logger.logger.log(
            log_level,
            f"Exception occurred: {exception.__class__.__name__}",
            extra={"extra_data": json.loads(json.dumps(log_data, default=str))},
        )


# Global error logger instance
error_logger = StructuredErrorLogger()


@contextmanager
def error_context(
    run_id: Optional[str] = None,
    command: Optional[str] = None,
) -> Iterator[None]:
    """Context manager for setting error logging context.

    Args:
        run_id: Identifier of the current CLI invocation
        command: Subcommand being executed
    """
    run_token = run_id_context.set(run_id) if run_id else None
    command_token = command_context.set(command) if command else None

    try:
        yield
    finally:
        if run_token:
            run_id_context.reset(run_token)
        if command_token:
            command_context.reset(command_token)


def log_exception(
    exception: Exception,
    severity: Optional[str] = None,
    context: Optional[dict[str, Any]] = None,
    **kwargs: Any,
) -> None:
    """Convenience function for logging exceptions."""
    error_logger.log_error(exception, severity, context, **kwargs)
