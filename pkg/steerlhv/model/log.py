"""Logger names for the steerlhv library modules."""

from __future__ import annotations

from typing import TYPE_CHECKING

from steerlhv.log import LogComponent as LogComponentBase
from steerlhv.log import get_logger as _get_logger

if TYPE_CHECKING:
    import logging


class LogComponent(LogComponentBase):
    """Library logging component names (dotted logger keys)."""

    ROOT = "steerlhv.model"
    STEERING = "steerlhv.model.steering"
    STRUCTURE = "steerlhv.model.structure"
    ASSEMBLY = "steerlhv.model.assembly"
    BUILDERS = "steerlhv.model.builders"
    LP = "steerlhv.lp"
    ANALYSIS = "steerlhv.analysis"


def get_logger(
    component: object | str = LogComponent.ROOT,
) -> logging.Logger:
    """Return a logger for the specified library component.

    Args:
        component: A LogComponent constant or a dotted logger name string.

    Returns:
        A standard Python logger for the given component.
    """
    return _get_logger(component)


__all__ = ["LogComponent", "get_logger"]
