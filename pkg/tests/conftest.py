import pytest

from infhecke.poly import Poly, T
from infhecke.sl2 import h0, hz_presentation


@pytest.fixture(scope="session")
def H0():
    return h0()


@pytest.fixture(scope="session")
def H1():
    return hz_presentation(Poly.const(1))


@pytest.fixture(scope="session")
def HD():
    return hz_presentation(T)
