"""Logger names for the command-line stack."""

from __future__ import annotations

from steerlhv.log import LogComponent as LogComponentBase


class LogComponent(LogComponentBase):
    """Dotted logger names for the steerlhv command-line / entrypoint stack."""

    ROOT = "steerlhv"
    CLI = "steerlhv.cli"
    # JSON Lines run events (``--structured-log``); used by
    # :mod:`steerlhv.structured_log`.
    STRUCTURED = "steerlhv.structured"


__all__ = ["LogComponent"]
