import numpy as np
import pytest

from zxzw.phase import Phase
from zxzw.random_terms import random_layer as _random_layer


def close(a, b, tol=1e-9):
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and float(np.max(np.abs(a - b), initial=0.0)) <= tol


def random_phase(rng):
    if rng.random() < 0.5:
        return Phase.pi(int(rng.integers(0, 8)), 4)
    return Phase.real(float(rng.uniform(0, 2 * np.pi)))


def random_layer(rng, width, calculus="ZX"):
    return _random_layer(rng, width, calculus)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
