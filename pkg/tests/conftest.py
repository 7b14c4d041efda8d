import pytest

from qhopf import preset


@pytest.fixture(scope="session")
def trivial2():
    return preset("trivial", 2)


@pytest.fixture(scope="session")
def abelian4():
    return preset("abelian", 4)


@pytest.fixture(scope="session")
def qsl2_n3():
    return preset("qsl2", 3)


@pytest.fixture(scope="session")
def qsl2_n4():
    return preset("qsl2", 4)
