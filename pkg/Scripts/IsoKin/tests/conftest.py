"""
Shared fixtures for the IsoKin test suite.
"""
import math

import numpy as np
import pytest

from Scripts.IsoKin.geometry.planar_geometry import DIMENSIONLESS, PointSet

SQRT2 = math.sqrt(2.0)


@pytest.fixture
def unit_square():
    """The model set {(1,1),(-1,1),(-1,-1),(1,-1)}."""
    return PointSet([[1, 1], [-1, 1], [-1, -1], [1, -1]], DIMENSIONLESS)


@pytest.fixture
def half_square():
    """The half-scaled square, side l = 1."""
    return PointSet([[0.5, 0.5], [-0.5, 0.5], [-0.5, -0.5], [0.5, -0.5]])


@pytest.fixture
def square_K():
    return np.array([[1.0, 1.0, 1.0, 1.0],
                     [-1.0, -1.0, 1.0, 1.0],
                     [1.0, -1.0, -1.0, 1.0]])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
