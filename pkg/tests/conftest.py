import mpmath
import pytest


@pytest.fixture
def mp50():
    with mpmath.workdps(50):
        yield mpmath
