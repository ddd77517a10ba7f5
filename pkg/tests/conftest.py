import numpy as np
import pytest

from susypiv import Grid
from susypiv.verify import BENCHMARK_PARAMS


def _param_id(params):
    eps = params.epsilon
    return f"eps{eps.real:g}{eps.imag:+g}j_lam{params.lam:g}_kap{params.kappa:g}"


PARAM_IDS = [_param_id(p) for p in BENCHMARK_PARAMS]


@pytest.fixture(scope="session")
def default_grid():
    return Grid(-5.0, 5.0, 0.01)


@pytest.fixture(scope="session")
def coarse_grid():
    return Grid(-5.0, 5.0, 0.05)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240901)
