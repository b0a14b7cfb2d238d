import numpy as np
import pytest

from yblab.sampling import random_context


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(scope="module")
def ell_ctx2():
    return random_context(2, np.random.default_rng(101), elliptic=True)


@pytest.fixture(scope="module")
def ell_ctx3():
    return random_context(3, np.random.default_rng(103), elliptic=True)


@pytest.fixture(scope="module")
def trig_ctx2():
    return random_context(2, np.random.default_rng(201), elliptic=False)


@pytest.fixture(scope="module")
def trig_ctx3():
    return random_context(3, np.random.default_rng(203), elliptic=False)
