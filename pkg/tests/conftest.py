import warnings

import numpy as np
import pytest

from cascade_eit import AtomRates, Config, DriveParams
from cascade_eit.errors import LowSaturationWarning

FIG_GAMMAS = (0.5, 0.105, 0.605)


@pytest.fixture
def fig_rates():
    return AtomRates.from_gammas(*FIG_GAMMAS)


@pytest.fixture
def quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LowSaturationWarning)
        yield


def random_eit_draws(seed=1234, n=1000):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        rates = AtomRates(rng.uniform(0.05, 2.0), rng.uniform(0, 0.5), rng.uniform(0, 0.5))
        drive = DriveParams(Config.EIT, rng.uniform(0, 3), rng.uniform(-5, 5), rng.uniform(-5, 5))
        yield rates, drive
