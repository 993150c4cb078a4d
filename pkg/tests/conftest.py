import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def uhp(rng, n=None, re=(-2.0, 2.0), im=(0.5, 3.0)):
    """Random point(s) in a box of the upper half-plane."""
    return rng.uniform(*re, size=n) + 1j * rng.uniform(*im, size=n)
