import numpy as np
import pytest

from clusterport import StateVector


def random_state(rng, labels):
    """Normalized random state over the given labels."""
    n = 2 ** len(labels)
    amps = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    amps /= np.linalg.norm(amps)
    return StateVector(tuple(labels), amps)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
