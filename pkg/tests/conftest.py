import pytest

from diagbase.catalog import get_group


@pytest.fixture(scope="session")
def A5():
    return get_group("A5")


@pytest.fixture(scope="session")
def A6():
    return get_group("A6")


@pytest.fixture(scope="session")
def L27():
    return get_group("L2(7)")
