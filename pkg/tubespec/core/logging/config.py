"""Logging setup for a run, driven by TUBESPEC_LOG and TUBESPEC_LOG_FILE."""

import logging
from typing import Optional

from ..config.app_config import LoggingConfig, get_config
from .structured_logger import build_handlers, reconfigure_loggers

# numerical libraries stay quiet below WARNING even in debug runs
QUIET_LIBRARIES = ("numpy", "scipy")


def setup_logging(config: Optional[LoggingConfig] = None) -> None:
    config = config or get_config().logging
    level = logging.getLevelName(config.level)

    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()
    root.setLevel(level)
    for handler in build_handlers(config):
        root.addHandler(handler)

    for name in QUIET_LIBRARIES:
        logging.getLogger(name).setLevel(max(logging.WARNING, level))
    reconfigure_loggers(config)
