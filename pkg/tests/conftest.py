from pathlib import Path

import pytest

from mappings import LogharmonicMap, const
from models import GridSpec, Variant
from starlike import counterexample, f_alpha

MANIFEST_DIR = Path(__file__).resolve().parent.parent / "manifests"


@pytest.fixture
def manifest_dir():
    return MANIFEST_DIR


@pytest.fixture
def small_grid():
    """A coarse grid that keeps disk searches fast."""
    return GridSpec(radii_count=32, angles_count=96)


@pytest.fixture
def f_one():
    return f_alpha(1.0)


@pytest.fixture
def identity_f():
    """f(z) = z, the ORIGIN_FIXED map with h = g = 0."""
    return LogharmonicMap(h=const(0.0), g=const(0.0), variant=Variant.ORIGIN_FIXED)


@pytest.fixture
def cex():
    return counterexample()
