import random

import pytest

from gptsim.catalog import classical, polygon, qubit_suite, square_bit


@pytest.fixture(scope="session")
def sq():
    return square_bit()


@pytest.fixture(scope="session")
def trit():
    return classical(3)


@pytest.fixture(scope="session")
def pentagon():
    return polygon(5)


@pytest.fixture(scope="session")
def hexagon():
    return polygon(6)


@pytest.fixture(scope="session")
def suite():
    return qubit_suite()


@pytest.fixture()
def rng():
    return random.Random(1234)
