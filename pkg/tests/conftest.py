"""
File: conftest.py
Project: mirrorsim
Created: Monday, 12th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from collections.abc import Iterator
import logging

from fastapi.testclient import TestClient
import numpy as np
import pytest

from mirrorsim.config import get_settings
from mirrorsim.main import app
from mirrorsim.physics.grid import Grid, make_grid


@pytest.fixture
def client() -> TestClient:
    """
    Fixture that returns a TestClient to test the API.

    Returns:
        TestClient: FastAPI test client.
    """
    return TestClient(app)


@pytest.fixture
def grid() -> Grid:
    """Small unit-spacing lattice (n = 256, dx = 1)."""
    return make_grid(256, 1.0)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so randomised suites are reproducible."""
    return np.random.default_rng(20261017)


@pytest.fixture
def fresh_settings() -> Iterator[None]:
    """Re-read settings from the environment for one test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def restore_logging() -> Iterator[None]:
    """Put the root logger back after code that calls setup_logging."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    for handler in root.handlers[:]:
        root.removeHandler(handler)
    for handler in handlers:
        root.addHandler(handler)
    root.setLevel(level)
