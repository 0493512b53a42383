"""
Structured JSON Lines event logging for CLI runs.

File-based only; omit --structured-log to disable. Every line is one JSON
object with ``timestamp``, ``event`` and the event's own fields.
"""

from __future__ import annotations

import contextlib
import json
import logging
import time
from enum import Enum
from pathlib import Path
from typing import Any, TextIO

import numpy as np

from steerlhv.cli.log import LogComponent
from steerlhv.log import get_logger

_logger = get_logger(LogComponent.STRUCTURED)

EVENT_TYPES = frozenset({"check", "scan", "mismatch", "werner_probe", "werner", "gpr", "steer", "error"})
"""Event names a run may emit."""


def _jsonable(value: Any) -> Any:
    """``json.dumps`` fallback for numpy scalars and arrays, enums and paths."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Enum):
        return value.value
    return str(value)


class StructuredEventLogger:
    """Appends run events (solves, scan mismatches, Werner probes) to a JSONL stream.

    Each event is mirrored at DEBUG level on the ``steerlhv.structured``
    logger, without its timestamp.
    """

    def __init__(self, output: TextIO) -> None:
        self._output: TextIO = output
        self._closed = False
        self.count = 0

    @classmethod
    def open(cls, path: str | Path) -> StructuredEventLogger:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        return cls(path.open("a", encoding="utf-8"))

    def log_event(self, event_type: str, **fields: Any) -> None:
        if event_type not in EVENT_TYPES:
            raise ValueError(f"Unknown event type {event_type!r}")
        if self._closed:
            return
        body = json.dumps({"event": event_type, **fields}, default=_jsonable, sort_keys=True)
        try:
            self._output.write(f'{{"timestamp": {time.time()!r}, {body[1:]}\n')
            self._output.flush()
        except OSError as e:
            _logger.warning(f"Dropping {event_type} event: {e}")
            return
        self.count += 1
        _logger.log(logging.DEBUG, "event: %s", body)

    def close(self) -> None:
        if not self._closed:
            self._closed = True
            with contextlib.suppress(OSError):
                self._output.close()

    def __enter__(self) -> StructuredEventLogger:
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()


class NullEventLogger(StructuredEventLogger):
    """Stand-in used when no --structured-log file was given."""

    def __init__(self) -> None:
        self._closed = True
        self.count = 0

    def close(self) -> None:
        pass
