import pytest

from nilaut import groupkit


@pytest.fixture(scope="session")
def g2_5():
    return groupkit.build_G2(5)


@pytest.fixture(scope="session")
def gp_33():
    return groupkit.build_Gp(3, 3)


@pytest.fixture(scope="session")
def d4():
    return groupkit.dihedral(4)
