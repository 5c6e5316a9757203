"""Logging setup: human-readable lines on stderr, results stay on stdout."""
import logging
import sys
from typing import Final, Optional

from core.config import config

_LOG_FORMAT: Final[str] = "%(asctime)s [%(levelname)s] %(name)s - %(message)s"
_NOISY_LOGGERS: Final[tuple] = ("matplotlib", "PIL")


def setup_logging(level: Optional[int] = None) -> None:
    """Configure the root logger once per process.

    Args:
        level: Explicit level; defaults to DEBUG when ``config.debug`` is set
            and INFO otherwise.
    """
    if level is None:
        level = logging.DEBUG if config.debug else logging.INFO
    root_logger = logging.getLogger()

    if root_logger.hasHandlers():
        root_logger.handlers.clear()

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(_LOG_FORMAT))
    root_logger.addHandler(handler)
    root_logger.setLevel(level)

    for name in _NOISY_LOGGERS:
        logging.getLogger(name).setLevel(max(level, logging.WARNING))
