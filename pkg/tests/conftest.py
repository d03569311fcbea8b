import numpy as np
import pytest

from qmetric.cases import example1_states, example2_states
from qmetric.states import random_density


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def ex1():
    return example1_states()


@pytest.fixture
def ex2():
    return example2_states()


def random_pair(n, rng, rank=None):
    return random_density(n, rank, rng), random_density(n, rank, rng)
