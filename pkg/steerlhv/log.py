"""
.. include:: ../docs/log.md
"""

from __future__ import annotations

import contextlib
import logging
import os
import sys
import time
from collections.abc import Iterator
from enum import Enum
from typing import Any, ClassVar

ROOT_LOGGER_NAME = "steerlhv"

_LEVEL_ALIASES = {"WARN": "WARNING", "FATAL": "CRITICAL"}


class LogLevel(Enum):
    """Log level enumeration matching Python logging."""

    DEBUG = logging.DEBUG
    INFO = logging.INFO
    WARNING = logging.WARNING
    ERROR = logging.ERROR
    CRITICAL = logging.CRITICAL

    @classmethod
    def from_string(cls, level: str) -> LogLevel:
        """Parse a case-insensitive level name; ``warn`` and ``fatal`` are accepted."""
        name = level.strip().upper()
        return cls[_LEVEL_ALIASES.get(name, name)]


class LogComponent:
    """Base for categorized logger names.

    Concrete component sets live in :mod:`steerlhv.model.log` and
    :mod:`steerlhv.cli.log`. Do not add members here.
    """

    __slots__ = ()


def _component_name(component: object) -> str:
    if isinstance(component, str):
        return component
    value = component.value if isinstance(component, Enum) else getattr(component, "value", None)
    if isinstance(value, str):
        return value
    raise TypeError("component must be a logger name string, an enum member, or an object with a string 'value'")


def _level_value(level: LogLevel | str | int) -> int:
    if isinstance(level, str):
        level = LogLevel.from_string(level)
    return level.value if isinstance(level, LogLevel) else level


def colors_supported(stream: Any = None) -> bool:
    """Whether ``stream`` (stderr by default) is likely to render ANSI colors."""
    stream = sys.stderr if stream is None else stream
    if "NO_COLOR" in os.environ:
        return False
    isatty = getattr(stream, "isatty", None)
    return bool(isatty and isatty()) or any(key in os.environ for key in ("PYCHARM_HOSTED", "FORCE_COLOR", "COLORTERM"))


def short_name(name: str) -> str:
    """Display name of a logger: the package prefix dropped, foreign names cut to two parts."""
    if name in ("root", ROOT_LOGGER_NAME):
        return ROOT_LOGGER_NAME
    prefix = f"{ROOT_LOGGER_NAME}."
    if name.startswith(prefix):
        return name[len(prefix) :]
    return ".".join(name.split(".")[-2:])


class ColoredFormatter(logging.Formatter):
    """Console formatter: ``[model.assembly] +1.234s message``.

    The timestamp is the time since logging started, which is what matters
    when following a long scan or Werner search. Warnings and worse add the
    level letter to the bracket.
    """

    COLORS: ClassVar[dict[int, str]] = {
        logging.DEBUG: "\033[36m",
        logging.INFO: "\033[32m",
        logging.WARNING: "\033[33m",
        logging.ERROR: "\033[31m",
        logging.CRITICAL: "\033[35m",
    }
    RESET = "\033[0m"
    BOLD = "\033[1m"

    def __init__(self, fmt: str | None = None, datefmt: str | None = None, use_colors: bool = True):
        super().__init__(fmt, datefmt)
        self.use_colors = use_colors

    def _paint(self, text: str, levelno: int, bold: bool = False) -> str:
        if not self.use_colors:
            return text
        return f"{self.COLORS.get(levelno, '')}{self.BOLD if bold else ''}{text}{self.RESET}"

    def format(self, record: logging.LogRecord) -> str:
        name = short_name(record.name)
        loud = record.levelno >= logging.WARNING
        tag = f"[{name} {record.levelname[0]}]" if loud else f"[{name}]"
        elapsed = f"+{record.relativeCreated / 1000.0:.3f}s"
        text = f"{self._paint(tag, record.levelno, bold=loud)} {self._paint(elapsed, record.levelno)} {record.getMessage()}"
        if record.exc_info:
            text = f"{text}\n{self.formatException(record.exc_info)}"
        return text


def configure_logging(
    level: LogLevel | str | int = LogLevel.INFO,
    format_str: str | None = None,
    use_colors: bool = True,
    log_file: str | None = None,
    root_name: str = ROOT_LOGGER_NAME,
) -> None:
    """
    Configure logging for library use outside the CLI.

    Console output goes to stderr, so stdout stays free for reports.

    Args:
        level: Log level (LogLevel enum, string, or int)
        format_str: Custom format string for the file handler
        use_colors: Use colored output for console
        log_file: Optional path to log file
        root_name: Logger name to configure (default: ``steerlhv``)
    """
    level_value = _level_value(level)
    root_logger = logging.getLogger(root_name)
    root_logger.setLevel(level_value)
    root_logger.handlers.clear()
    root_logger.propagate = False

    console = logging.StreamHandler(sys.stderr)
    console.setLevel(level_value)
    console.setFormatter(ColoredFormatter(use_colors=use_colors and colors_supported(sys.stderr)))
    root_logger.addHandler(console)

    if log_file:
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(level_value)
        file_handler.setFormatter(logging.Formatter(format_str or "%(asctime)s [%(levelname)s] %(name)s: %(message)s"))
        root_logger.addHandler(file_handler)


def get_logger(component: Any = ROOT_LOGGER_NAME) -> logging.Logger:
    """
    Get a logger for the specified component.

    Args:
        component: Dotted logger name string, or a :class:`LogComponent`
            member / enum / object with a string ``value``.
    """
    return logging.getLogger(_component_name(component))


def set_level(level: LogLevel | str | int, component: Any | None = None) -> None:
    """Set the log level for a component or the package root logger."""
    logger_name = ROOT_LOGGER_NAME if component is None else _component_name(component)
    logging.getLogger(logger_name).setLevel(_level_value(level))


@contextlib.contextmanager
def timed(logger: logging.Logger, what: str, level: int = logging.DEBUG) -> Iterator[None]:
    """Log how long the body took: ``<what> took 0.012s``."""
    start = time.perf_counter()
    try:
        yield
    finally:
        logger.log(level, f"{what} took {time.perf_counter() - start:.3f}s")


__all__ = [
    "ROOT_LOGGER_NAME",
    "ColoredFormatter",
    "LogComponent",
    "LogLevel",
    "colors_supported",
    "configure_logging",
    "get_logger",
    "set_level",
    "short_name",
    "timed",
]
