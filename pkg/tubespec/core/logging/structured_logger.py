"""Structured Logging Implementation

One JSON object per line on stderr (stdout carries the reports), plus an
optional rotating file. Lines written inside a run carry its ``run_id`` and
command under ``context`` so a whole computation can be followed.
"""

import json
import logging
import sys
import time
from contextlib import contextmanager
from contextvars import ContextVar
from datetime import datetime, timezone
from logging.handlers import RotatingFileHandler
from typing import Any, Iterator, Optional

from ..config.app_config import LoggingConfig, get_config

run_id_context: ContextVar[Optional[str]] = ContextVar("run_id", default=None)
command_context: ContextVar[Optional[str]] = ContextVar("command", default=None)


def current_run() -> dict[str, Optional[str]]:
    return {"run_id": run_id_context.get(), "command": command_context.get()}


class JSONFormatter(logging.Formatter):
    """Render a record as a single JSON line."""

    def format(self, record: logging.LogRecord) -> str:
        log_data: dict[str, Any] = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }

        run = current_run()
        if run["run_id"] is not None:
            log_data["context"] = run

        log_data.update(getattr(record, "extra_data", {}))

        if record.exc_info and record.exc_info[0] is not None:
            log_data["exception"] = {
                "type": record.exc_info[0].__name__,
                "message": str(record.exc_info[1]),
                "traceback": self.formatException(record.exc_info),
            }

        return json.dumps(log_data, default=str, ensure_ascii=False)


def build_handlers(config: LoggingConfig) -> list[logging.Handler]:
    """stderr handler, and a rotating file handler when a path is configured."""
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if config.file_path:
        handlers.append(
            RotatingFileHandler(
                config.file_path,
                maxBytes=config.max_file_size,
                backupCount=config.backup_count,
            )
        )
    level = logging.getLevelName(config.level)
    for handler in handlers:
        handler.setFormatter(JSONFormatter())
        handler.setLevel(level)
    return handlers


class StructuredLogger:
    """Named logger with its own handlers; does not propagate to the root."""

    def __init__(self, name: str, config: Optional[LoggingConfig] = None):
        self.name = name
        self.logger = logging.getLogger(name)
        self.configure(config or get_config().logging)

    def configure(self, config: LoggingConfig) -> None:
        """Replace the handlers for a new configuration."""
        self.config = config
        for handler in list(self.logger.handlers):
            self.logger.removeHandler(handler)
            handler.close()
        self.logger.setLevel(logging.getLevelName(config.level))
        for handler in build_handlers(config):
            self.logger.addHandler(handler)
        self.logger.propagate = False

    def log(
        self,
        level: int,
        message: str,
        extra_data: Optional[dict[str, Any]] = None,
        exc_info: bool = False,
    ) -> None:
        extra = {"extra_data": extra_data} if extra_data else {}
        self.logger.log(level, message, extra=extra, exc_info=exc_info)

    def debug(self, message: str, extra_data: Optional[dict[str, Any]] = None) -> None:
        self.log(logging.DEBUG, message, extra_data)

    def info(self, message: str, extra_data: Optional[dict[str, Any]] = None) -> None:
        self.log(logging.INFO, message, extra_data)

    def warning(self, message: str, extra_data: Optional[dict[str, Any]] = None) -> None:
        self.log(logging.WARNING, message, extra_data)

    def error(
        self, message: str, extra_data: Optional[dict[str, Any]] = None, exc_info: bool = False
    ) -> None:
        self.log(logging.ERROR, message, extra_data, exc_info)

    @contextmanager
    def log_computation(
        self, event_name: str, details: Optional[dict[str, Any]] = None
    ) -> Iterator[dict[str, Any]]:
        """Time a computation and log its start and end.

        The yielded dict may be filled with result fields; they are merged
        into the completion record.
        """
        record: dict[str, Any] = {"event_name": event_name, "event_type": "computation", **(details or {})}
        self.debug(f"Computation started: {event_name}", record)
        outcome: dict[str, Any] = {}
        start = time.perf_counter()
        yield outcome
        record.update(outcome)
        record["duration_ms"] = round((time.perf_counter() - start) * 1000.0, 3)
        self.info(f"Computation finished: {event_name}", record)


_loggers: dict[str, StructuredLogger] = {}


def get_logger(name: str) -> StructuredLogger:
    """Cached logger per name."""
    if name not in _loggers:
        _loggers[name] = StructuredLogger(name)
    return _loggers[name]


def reconfigure_loggers(config: LoggingConfig) -> None:
    """Apply a new logging configuration to every cached logger."""
    for logger in _loggers.values():
        logger.configure(config)
