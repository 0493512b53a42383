"""
Pytest configuration and fixtures for steerlhv tests.

Randomized tests draw from ``numpy.random.default_rng(SEED)``; set the SEED
environment variable to reproduce or vary a run. Hypothesis runs
derandomized under the "ci" profile.
"""

from __future__ import annotations

import logging
import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from steerlhv.log import LogLevel, configure_logging

DEFAULT_SEED = 20240601

settings.register_profile("ci", max_examples=60, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


def pytest_configure(config: pytest.Config) -> None:
    """Pytest configuration."""
    configure_logging(level=LogLevel.DEBUG, root_name="steerlhv")

    # Strip the console handler and let records flow to pytest's capture
    steerlhv_logger = logging.getLogger("steerlhv")
    steerlhv_logger.handlers.clear()
    steerlhv_logger.propagate = True


def pytest_collection_modifyitems(config: pytest.Config, items: list) -> None:
    """Auto-apply the unit marker based on test path."""
    for item in items:
        if "/unit/" in str(item.path):
            item.add_marker(pytest.mark.unit)


@pytest.fixture
def seed() -> int:
    """Seed for randomized tests, from the SEED environment variable."""
    return int(os.environ.get("SEED", DEFAULT_SEED))


@pytest.fixture
def rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


@pytest.fixture
def pauli_triple():
    """Overlaps of eigenstates of three different Pauli operators."""
    from steerlhv.model.geometry import OverlapTriple

    return OverlapTriple(0.5, 0.5, 0.5)
