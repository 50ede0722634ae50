import pytest

from lucentnet import ExplorationLimits, reference_net


@pytest.fixture(scope="session")
def n1():
    return reference_net("n1")


@pytest.fixture(scope="session")
def n2():
    return reference_net("n2")


@pytest.fixture(scope="session")
def n3():
    return reference_net("n3")


@pytest.fixture(scope="session")
def n4():
    return reference_net("n4")


@pytest.fixture(scope="session")
def n5():
    return reference_net("n5")


@pytest.fixture(scope="session")
def limits():
    return ExplorationLimits()
