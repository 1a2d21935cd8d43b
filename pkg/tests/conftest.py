"""Pytest fixtures for conductive-corner-lab tests"""

import math

import numpy as np
import pytest

from conductive_corner_lab.geometry import (
    CellScatterer,
    DiskScatterer,
    LinearIndex,
    NestScatterer,
    Polygon,
    Sector,
)
from conductive_corner_lab.logging import LogStore, reset_log_store


@pytest.fixture(autouse=True)
def fresh_log_store():
    """Reset the process-wide log store around every test"""
    reset_log_store()
    yield
    reset_log_store()


@pytest.fixture
def log_store(tmp_path) -> LogStore:
    """LogStore writing into a temporary directory"""
    return LogStore(tmp_path / "logs", session_id="test")


@pytest.fixture
def unit_square() -> Polygon:
    """Unit square centred at the origin"""
    return Polygon.square(1.0)


@pytest.fixture
def irrational_triangle() -> Polygon:
    """Triangle of the irrational_triangle preset"""
    return Polygon([[-0.5, -0.35], [0.55, -0.3], [-0.1, 0.6]])


@pytest.fixture
def symmetric_sector() -> Sector:
    """Sector of opening pi/sqrt(2) around the positive x axis"""
    return Sector.symmetric(math.pi / math.sqrt(2))


@pytest.fixture
def nested_squares() -> NestScatterer:
    """Two strictly nested squares with constant indices"""
    return NestScatterer(
        layers=(Polygon.square(1.0), Polygon.square(0.4)),
        indices=(LinearIndex(2.0), LinearIndex(3.0)),
        etas=(0.5, 1.0),
    )


@pytest.fixture
def two_cells() -> CellScatterer:
    """Unit square split into left and right halves"""
    left = Polygon([[-0.5, -0.5], [0.0, -0.5], [0.0, 0.5], [-0.5, 0.5]])
    right = Polygon([[0.0, -0.5], [0.5, -0.5], [0.5, 0.5], [0.0, 0.5]])
    return CellScatterer(cells=(left, right), eta=1.0, indices=(LinearIndex(2.0), LinearIndex(3.0)))


@pytest.fixture
def single_disk() -> DiskScatterer:
    """Homogeneous conductive disk of radius 0.5"""
    return DiskScatterer(radii=(0.5,), q_values=(2.0,), etas=(0.5,))


@pytest.fixture
def two_layer_disk() -> DiskScatterer:
    """Two-layer disk with a lossy conductive interface"""
    return DiskScatterer(radii=(0.6, 0.3), q_values=(2.0, 4.0 + 0.5j), etas=(1.0 + 0.2j, 0.5))


@pytest.fixture
def empty_disk() -> DiskScatterer:
    """Disk with q = 1 and eta = 0 (no scatterer at all)"""
    return DiskScatterer(radii=(0.5,), q_values=(1.0,), etas=(0.0,))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)
