import pytest

from relhyp_cwp.group_model import GroupContext
from relhyp_cwp.oracle_harness import constants_for
from relhyp_cwp.slp_core import BOUND_AUDIT, enable_bound_audit

# Every program built during the run is checked against |val| <= 3^(|G|/3).
enable_bound_audit(True)


@pytest.fixture(scope="session")
def audit():
    return BOUND_AUDIT


@pytest.fixture(scope="session")
def gstar():
    """Z^2 * Z with letters z1, z2 (first factor) and z3 (second factor)."""
    return constants_for(GroupContext.free_product((2, 1)))


@pytest.fixture(scope="session")
def free3():
    return constants_for(GroupContext.free_product((1, 1, 1)))


@pytest.fixture(scope="session")
def big():
    return constants_for(GroupContext.free_product((3, 2)))


def pytest_collection_modifyitems(session, config, items):
    # Run the acceptance suite last so that its audit check sees every program built in the session.
    items.sort(key=lambda item: item.fspath.basename == "test_acceptance.py")
