import numpy as np
import pytest

from weinstein.grids import Grid
from weinstein.special import BesselIndex
from weinstein.transform import build_plan


@pytest.fixture(scope="session")
def plan96():
    """Desk-scale plan: d=1, alpha=0.5, n=(96, 96), L=R=10."""
    return build_plan(Grid(1, BesselIndex(0.5), (96,), (10.0,), 96, 10.0))


@pytest.fixture(scope="session")
def plan_small():
    """Cheap plan for O(N^2) cross-checks: n=(24, 24), L=R=6."""
    return build_plan(Grid(1, BesselIndex(0.5), (24,), (6.0,), 24, 6.0))


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
