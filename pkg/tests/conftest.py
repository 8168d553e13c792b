import pytest

from sring.enumeration import enumerate_srings
from sring.groups import make_group

GROUPS_LE_16 = [
    [1], [2], [3], [4], [2, 2], [5], [6], [7], [8], [4, 2], [2, 2, 2],
    [9], [3, 3], [10], [11], [12], [6, 2], [13], [14], [15],
    [16], [8, 2], [4, 4], [4, 2, 2], [2, 2, 2, 2],
]

GROUPS_17_TO_24 = [
    [17], [18], [6, 3], [19], [20], [10, 2], [21], [22], [23],
    [24], [12, 2], [6, 2, 2],
]


@pytest.fixture(scope="session")
def catalogs_le_16():
    """Flagged catalogs for every abelian group of order at most 16."""
    return {
        tuple(f): enumerate_srings(make_group(f)) for f in GROUPS_LE_16
    }


@pytest.fixture(scope="session")
def catalogs_17_24():
    """Unflagged catalogs for the groups of order 17..24 (multiplier suite)."""
    return {
        tuple(f): enumerate_srings(make_group(f), compute_flags=False)
        for f in GROUPS_17_TO_24
    }


@pytest.fixture(scope="session")
def catalog_e4c3():
    return enumerate_srings(make_group([2, 2, 3]))


@pytest.fixture(scope="session")
def catalog_e4c5():
    return enumerate_srings(make_group([2, 2, 5]))


@pytest.fixture(scope="session")
def catalog_e4c9():
    return enumerate_srings(make_group([2, 2, 9]), compute_flags=False)


@pytest.fixture(scope="session")
def catalog_c8c2c3():
    return enumerate_srings(make_group([8, 2, 3]))
