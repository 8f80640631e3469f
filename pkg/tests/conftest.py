import pytest

from gridlocus.field import context_for_n
from gridlocus.reference import halved_antipodal_johnson, johnson, petersen, rook_complement, rook_grid
from gridlocus.symplectic import build_gamma

_GAMMA = {}


def gamma(n):
    if n not in _GAMMA:
        _GAMMA[n] = build_gamma(context_for_n(n))
    return _GAMMA[n]


@pytest.fixture(scope="session")
def gamma3():
    return gamma(3)


@pytest.fixture(scope="session")
def gamma5():
    return gamma(5)


@pytest.fixture(scope="session")
def gamma7():
    return gamma(7)


@pytest.fixture(scope="session")
def j63():
    return johnson(6, 3)


@pytest.fixture(scope="session")
def j105():
    return johnson(10, 5)


@pytest.fixture(scope="session")
def rc4():
    return rook_complement(4)


@pytest.fixture(scope="session")
def hj84():
    return halved_antipodal_johnson(8, 4)


@pytest.fixture(scope="session")
def grid55():
    return rook_grid(5, 5)


@pytest.fixture(scope="session")
def pet():
    return petersen()


@pytest.fixture(scope="session")
def gamma_of():
    return gamma
