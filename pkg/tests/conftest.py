import pytest

from kldecomp import build_system, full_tables


@pytest.fixture(scope="session")
def a1():
    return build_system("A1")


@pytest.fixture(scope="session")
def a2():
    return build_system("A2")


@pytest.fixture(scope="session")
def a3():
    return build_system("A3")


@pytest.fixture(scope="session")
def b2():
    return build_system("B2")


@pytest.fixture(scope="session")
def b3():
    return build_system("B3")


@pytest.fixture(scope="session")
def d4():
    return build_system("D4")


@pytest.fixture(scope="session")
def tables_a2(a2):
    return full_tables(a2)


@pytest.fixture(scope="session")
def tables_a3(a3):
    return full_tables(a3)


@pytest.fixture(scope="session")
def tables_b2(b2):
    return full_tables(b2)


@pytest.fixture(scope="session")
def tables_b3(b3):
    return full_tables(b3)


@pytest.fixture(scope="session")
def tables_d4(d4):
    return full_tables(d4)
