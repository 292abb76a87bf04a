import pytest

from artinloc.algebra import (
    direct_product,
    full_matrix,
    lower_triangular,
    truncated_poly,
    upper_triangular,
)


@pytest.fixture(scope="session")
def L2_7():
    return lower_triangular(7, 2)


@pytest.fixture(scope="session")
def L3_7():
    return lower_triangular(7, 3)


@pytest.fixture(scope="session")
def U2_7():
    return upper_triangular(7, 2)


@pytest.fixture(scope="session")
def U3_7():
    return upper_triangular(7, 3)


@pytest.fixture(scope="session")
def M2_7():
    return full_matrix(7, 2)


@pytest.fixture(scope="session")
def T7():
    return truncated_poly(7, 2)


@pytest.fixture(scope="session")
def F7F7():
    return direct_product([full_matrix(7, 1), full_matrix(7, 1)])[0]


@pytest.fixture(scope="session")
def P1():
    return direct_product([full_matrix(7, 2), full_matrix(7, 1)])[0]


@pytest.fixture(scope="session")
def T7xF7():
    return direct_product([truncated_poly(7, 2), full_matrix(7, 1)])[0]


@pytest.fixture(scope="session")
def L2_5():
    return lower_triangular(5, 2)


@pytest.fixture(scope="session")
def U2_5():
    return upper_triangular(5, 2)


@pytest.fixture(scope="session")
def T5():
    return truncated_poly(5, 2)


@pytest.fixture(scope="session")
def F5F5():
    return direct_product([full_matrix(5, 1), full_matrix(5, 1)])[0]
