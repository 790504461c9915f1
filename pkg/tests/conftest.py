import numpy as np
import pytest

from hypervec import random_bipolar

D = 10_000


@pytest.fixture
def rng():
    return np.random.default_rng(20221019)


@pytest.fixture
def hvs(rng):
    """Three independent random bipolar hypervectors at d=10000."""
    return random_bipolar((3, D), rng)
