"""Root logger setup for one CLI run: console on stderr, optional DEBUG file."""

from __future__ import annotations

import logging
import sys

from rich.logging import RichHandler
from rich.text import Text

from steerlhv.cli.log import LogComponent
from steerlhv.log import ColoredFormatter, colors_supported

FILE_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
FILE_DATEFMT = "%Y-%m-%d %H:%M:%S"


class AnsiRichHandler(RichHandler):
    """RichHandler that keeps the ANSI colors ColoredFormatter already applied."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.highlighter = None

    def render_message(self, record: logging.LogRecord, message: str) -> Text:
        return Text.from_ansi(message)


def _console_handler() -> logging.Handler:
    if not sys.stderr.isatty():
        return logging.StreamHandler(sys.stderr)
    # shares the progress display's console so log lines print above the bar
    from steerlhv.cli.progress_bar import console

    return AnsiRichHandler(console=console, show_time=False, show_level=False, show_path=False)


def setup_logging(level: int = logging.INFO, log_file: str | None = None) -> logging.Logger:
    """
    Configure the root logger for a CLI run.

    stdout is reserved for the JSON report. Python warnings (numpy's
    RuntimeWarnings from degenerate inputs, for instance) are routed into
    the log.

    Args:
        level: console logging level
        log_file: Optional path; receives every record at DEBUG level

    Returns:
        The CLI logger
    """
    root_logger = logging.getLogger()
    root_logger.handlers.clear()
    root_logger.setLevel(logging.DEBUG if log_file else level)

    console_handler = _console_handler()
    console_handler.setLevel(level)
    console_handler.setFormatter(ColoredFormatter(use_colors=colors_supported(sys.stderr)))
    root_logger.addHandler(console_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file, mode="a", encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt=FILE_DATEFMT))
        root_logger.addHandler(file_handler)

    logging.captureWarnings(True)
    return logging.getLogger(LogComponent.CLI)
