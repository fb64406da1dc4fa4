import pytest

from helpers import unimodular_box


@pytest.fixture(scope="session")
def box3():
    return unimodular_box(3)
