import numpy as np
import pytest

from photon_slh.entities.pulse_entities import TimeGrid
from photon_slh.network import two_channel_model, two_level_model


def pytest_addoption(parser):
    parser.addoption('--seed', type=int, default=0, help="seed of the random frequencies and parameters")


@pytest.fixture
def rng(request):
    return np.random.default_rng(request.config.getoption('--seed'))


@pytest.fixture
def atom():
    return two_level_model(kappa=1.0, omega_c=2.0)


@pytest.fixture
def two_channel_atom():
    return two_channel_model(kappa1=1.0, kappa2=0.5, omega_c=2.0)


@pytest.fixture
def grid():
    """[-32, 32) with 2^14 samples; dt = 1/256 puts every integer time on the grid."""
    return TimeGrid.centered(span=64.0, log2_n=14)
