import numpy as np
import pytest

from lpsketch import StandardFormLp


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_feasible_lp(rng, m, n):
    A = rng.random((m, n))
    x = rng.random(n)
    return StandardFormLp(rng.random(n) + 0.1, A, A @ x), x
