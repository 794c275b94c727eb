import pytest

from hopfkit.builtins import (
    cyclic_table, group_algebra, taft, trivial_comodule, uqsl2,
)
from hopfkit.invariants import compute_bundle


@pytest.fixture(scope="session")
def kZ2():
    return group_algebra(cyclic_table(2))


@pytest.fixture(scope="session")
def kZ3():
    return group_algebra(cyclic_table(3))


@pytest.fixture(scope="session")
def taft3():
    return taft(3)


@pytest.fixture(scope="session")
def uq3():
    return uqsl2(3)


@pytest.fixture(scope="session")
def uq3_bundle(uq3):
    return compute_bundle(uq3)


@pytest.fixture(scope="session")
def taft3_bundle(taft3):
    return compute_bundle(taft3)
