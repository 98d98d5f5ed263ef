import pytest

from hypsys.permutations import build_diagram


@pytest.fixture(scope="session")
def diagram6():
    return build_diagram(6)


@pytest.fixture(scope="session")
def diagram7():
    return build_diagram(7)


@pytest.fixture(scope="session")
def diagram8():
    return build_diagram(8)
