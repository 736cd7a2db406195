import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from physics import ExperimentGeometry, derive_parameters  # noqa: E402


@pytest.fixture
def geometry():
    return ExperimentGeometry()


@pytest.fixture
def derived(geometry):
    return derive_parameters(geometry)


@pytest.fixture
def detector_grid():
    """Default detector grid, -500 µm to 500 µm with 4001 points."""
    return np.linspace(-500e-6, 500e-6, 4001)
