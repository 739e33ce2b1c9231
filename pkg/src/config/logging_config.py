#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# File: src/config/logging_config.py

"""
Logging Configuration Module

Console logs go to standard error; standard output carries only the JSON
reports of the CLI. A log directory adds a rotating file next to the console.
Messages about one monomial set are prefixed with its shape, e.g. "[n=5, d=3, q=5]".
"""

# Standard library imports
import os
import sys
import logging
import datetime
from logging import handlers
from typing import Optional, Dict, Any, List, Union, TYPE_CHECKING

if TYPE_CHECKING:
    from src.core import MonomialSet

# Define constants
DEFAULT_LOG_LEVEL = logging.WARNING
DEFAULT_LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DEFAULT_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
LOG_FILE_MAX_BYTES = 5 * 1024 * 1024
LOG_FILE_BACKUPS = 3
VERBOSITY_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


def verbosity_level(verbose: int) -> int:
    """Map the count of -v flags to a level: 0 WARNING, 1 INFO, 2+ DEBUG."""
    return VERBOSITY_LEVELS[max(0, min(verbose, len(VERBOSITY_LEVELS) - 1))]


def _default_log_file() -> str:
    timestamp = datetime.datetime.now().strftime("%Y%m%d_%H%M%S")
    return f"monocrem_{timestamp}.log"


def _build_handlers(
    log_dir: Optional[str], log_file: Optional[str], console: bool
) -> List[logging.Handler]:
    built: List[logging.Handler] = []
    if console:
        built.append(logging.StreamHandler(sys.stderr))
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        built.append(
            handlers.RotatingFileHandler(
                os.path.join(log_dir, log_file or _default_log_file()),
                maxBytes=LOG_FILE_MAX_BYTES,
                backupCount=LOG_FILE_BACKUPS,
                encoding="utf-8",
            )
        )
    return built


def setup_logging(
    log_level: Union[int, str] = DEFAULT_LOG_LEVEL,
    log_dir: Optional[str] = None,
    log_file: Optional[str] = None,
    console: bool = True,
) -> logging.Logger:
    """
    Configure the root logger, replacing any handlers it already has.

    Args:
        log_level: Level as a number or a name such as 'DEBUG'
        log_dir: Directory for a rotating log file (console only if None)
        log_file: File name inside log_dir (timestamped if None)
        console: Whether to log to standard error

    Returns:
        The configured root logger
    """
    if isinstance(log_level, str):
        log_level = logging.getLevelName(log_level.upper())
        if not isinstance(log_level, int):
            log_level = DEFAULT_LOG_LEVEL

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    formatter = logging.Formatter(DEFAULT_LOG_FORMAT, DEFAULT_DATE_FORMAT)
    for handler in _build_handlers(log_dir, log_file, console):
        handler.setFormatter(formatter)
        handler.setLevel(log_level)
        root_logger.addHandler(handler)

    root_logger.debug(f"Logging at {logging.getLevelName(log_level)}")
    return root_logger


def get_logger(name: str) -> logging.Logger:
    """
    Get a module logger, configuring defaults on first use.

    Args:
        name: Logger name, usually __name__

    Returns:
        Logger instance
    """
    if not logging.getLogger().handlers:
        setup_logging()
    return logging.getLogger(name)


def capture_exceptions(logger: Optional[logging.Logger] = None) -> None:
    """
    Route uncaught exceptions, except KeyboardInterrupt, to a logger.

    Args:
        logger: Logger to use (root logger if None)
    """
    target = logger or logging.getLogger()

    def exception_handler(exc_type, exc_value, exc_traceback):
        if issubclass(exc_type, KeyboardInterrupt):
            sys.__excepthook__(exc_type, exc_value, exc_traceback)
            return
        target.critical("Uncaught exception", exc_info=(exc_type, exc_value, exc_traceback))

    sys.excepthook = exception_handler


class ContextAdapter(logging.LoggerAdapter):
    """Prefixes each message with "[key=value, ...]", skipping None values."""

    def __init__(self, logger: logging.Logger, extra: Optional[Dict[str, Any]] = None):
        super().__init__(logger, extra or {})

    def process(self, msg, kwargs):
        context = ", ".join(f"{k}={v}" for k, v in self.extra.items() if v is not None)
        if context:
            msg = f"[{context}] {msg}"
        return msg, kwargs


def get_context_logger(name: str, **context) -> ContextAdapter:
    """
    Get a logger whose messages carry the given context.

    Args:
        name: Logger name
        **context: Key-value pairs shown before every message

    Returns:
        ContextAdapter instance
    """
    return ContextAdapter(get_logger(name), context)


def get_set_logger(name: str, monomial_set: Optional["MonomialSet"] = None) -> ContextAdapter:
    """
    Get a logger for work on one monomial set, with its n, d and q as context.

    Args:
        name: Logger name
        monomial_set: The set being processed (no context if None)

    Returns:
        ContextAdapter instance
    """
    if monomial_set is None:
        return get_context_logger(name)
    return get_context_logger(name, n=monomial_set.n, d=monomial_set.d, q=monomial_set.q)
