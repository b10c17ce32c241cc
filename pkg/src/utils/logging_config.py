"""
Package logger: stderr plus a rotating file under ``~/.brattelikit_logs``.

Only JSON documents go to stdout, so every handler here writes elsewhere.
"""

import os
import logging
from logging.handlers import RotatingFileHandler

LOGGER_NAME = "brattelikit"
LOG_DIR = os.path.join(os.path.expanduser("~"), ".brattelikit_logs")
LOG_FILE = "brattelikit.log"
FILE_FORMAT = "%(asctime)s [%(levelname)s] %(threadName)s %(name)s: %(message)s"
STREAM_FORMAT = "[%(levelname)s] %(name)s: %(message)s"


def _parse_level(name, default: int = logging.INFO) -> int:
    level = logging.getLevelName(str(name).upper())
    return level if isinstance(level, int) else default


def _file_handler(level: int):
    try:
        os.makedirs(LOG_DIR, exist_ok=True)
        handler = RotatingFileHandler(os.path.join(LOG_DIR, LOG_FILE), maxBytes=1_000_000,
                                      backupCount=3, encoding="utf-8")
    except OSError:
        return None  # read-only home: stderr only
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(FILE_FORMAT))
    return handler


def setup_logging() -> logging.Logger:
    """Configure the ``brattelikit`` logger once; the level comes from BRATTELIKIT_LOG_LEVEL."""
    level = _parse_level(os.environ.get("BRATTELIKIT_LOG_LEVEL", "INFO"))
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(level)
    if logger.handlers:
        return logger

    file_handler = _file_handler(level)
    if file_handler is not None:
        logger.addHandler(file_handler)
    stream = logging.StreamHandler()  # defaults to stderr
    stream.setLevel(level)
    stream.setFormatter(logging.Formatter(STREAM_FORMAT))
    logger.addHandler(stream)
    return logger


def set_level(level_name: str) -> int:
    """Re-level the package logger and its handlers (settings or CLI override)."""
    level = _parse_level(level_name, default=-1)
    if level < 0:
        LOGGER.warning(f"Unknown log level {level_name!r}; keeping {logging.getLevelName(LOGGER.level)}")
        return LOGGER.level
    LOGGER.setLevel(level)
    for handler in LOGGER.handlers:
        handler.setLevel(level)
    return level


LOGGER = setup_logging()
