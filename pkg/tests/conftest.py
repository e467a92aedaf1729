import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from tfdist import Grid, gen_bandlimited

settings.register_profile("tfdist", deadline=None, max_examples=30,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("tfdist")


@pytest.fixture
def bl_grid():
    return Grid.centered(256, 1.0 / 32)


@pytest.fixture
def bl_signal(bl_grid):
    return gen_bandlimited(bl_grid, (-4.0, 4.0), 11)


def rel_linf(a, b, scale=None):
    a, b = np.asarray(a), np.asarray(b)
    scale = max(np.max(np.abs(a)), np.max(np.abs(b))) if scale is None else scale
    return float(np.max(np.abs(a - b)) / scale)
