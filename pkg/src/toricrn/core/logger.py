"""Package logging: one "toricrn" logger, records on stderr and optionally in a file.

stdout carries the reports of the `crn` command, so no handler ever writes there.
"""

import logging
import sys
from pathlib import Path

PACKAGE = "toricrn"

logger = logging.getLogger(PACKAGE)

formatter = logging.Formatter(
    fmt="%(asctime)s [%(levelname)s] [%(name)s]: %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S"
)

def _console_handlers() -> list[logging.Handler]:
    # FileHandler subclasses StreamHandler
    return [
        handler for handler in logger.handlers
        if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler)
    ]

def _file_handlers() -> list[logging.FileHandler]:
    return [handler for handler in logger.handlers if isinstance(handler, logging.FileHandler)]

def set_stream_handler() -> None:
    """Attach the stderr handler unless one is attached already."""
    if _console_handlers():
        return
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    console_handler.setLevel(logger.level)
    logger.addHandler(console_handler)

if not logger.handlers:
    logger.setLevel(logging.WARNING)
    set_stream_handler()

def get_logger(name: str) -> logging.Logger:
    """
    Logger of a module below the package logger.

    Module names inside the package ("toricrn.analysis.toric") map to themselves;
    any other name (test modules) becomes a child of "toricrn".
    """
    if name == PACKAGE or name.startswith(PACKAGE + "."):
        return logging.getLogger(name)
    return logger.getChild(name)

def set_log_level(level_name: str) -> None:
    """
    Set the level of the package logger and its handlers.

    An unknown level name is logged and replaced by INFO.
    """
    level = logging.getLevelName(str(level_name).upper())
    if not isinstance(level, int):
        logger.error(f"Invalid log level: {level_name} - Defaulting to INFO level.")
        level = logging.INFO

    logger.setLevel(level)
    for handler in logger.handlers:
        handler.setLevel(level)

def set_file_handler(log_file: Path) -> None:
    """Write records to `log_file` as well, replacing an earlier file handler."""
    unset_file_handler()
    file_handler = logging.FileHandler(log_file, encoding="utf-8")
    file_handler.setFormatter(formatter)
    file_handler.setLevel(logger.level)
    logger.addHandler(file_handler)
    logger.debug(f"File handler attached: {log_file}")

def unset_stream_handler() -> None:
    """Stop logging to stderr."""
    for handler in _console_handlers():
        logger.removeHandler(handler)

def unset_file_handler() -> None:
    for handler in _file_handlers():
        logger.removeHandler(handler)
        handler.close()

def configure(level: str, to_console: bool = True, log_file: Path | None = None) -> None:
    """
    Apply one logging configuration, undoing whatever an earlier call set up.

    Args:
        level (str): Level name, e.g. "WARNING".
        to_console (bool): Log to stderr.
        log_file (Path | None): Also log to this file.
    """
    if to_console:
        set_stream_handler()
    else:
        unset_stream_handler()
    if log_file is not None:
        set_file_handler(log_file)
    else:
        unset_file_handler()
    set_log_level(level)
