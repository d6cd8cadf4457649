"""Logging Infrastructure

Centralized logging configuration and utilities for structured logging
with configurable levels and run context.
"""

from .config import setup_logging
from .error_logger import error_context, error_logger, log_exception
from .structured_logger import StructuredLogger, get_logger

__all__ = [
    "StructuredLogger",
    "get_logger",
    "setup_logging",
    "error_logger",
    "log_exception",
    "error_context",
]
