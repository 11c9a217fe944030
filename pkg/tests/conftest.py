import numpy as np
import pytest

from cealg.fields import field_make


@pytest.fixture(scope="session")
def f2():
    return field_make(2)


@pytest.fixture(scope="session")
def f3():
    return field_make(3)


@pytest.fixture(scope="session")
def f4():
    return field_make(2, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0FFEE)
