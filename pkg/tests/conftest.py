import pytest

from rootposets.rootsys import build_from_label
from rootposets.weyl import weyl_group

_SYSTEMS = {}


def system(label):
    """Shared immutable root systems; construction is deterministic."""
    if label not in _SYSTEMS:
        _SYSTEMS[label] = build_from_label(label)
    return _SYSTEMS[label]


def group(label):
    return weyl_group(system(label))


@pytest.fixture(scope="session")
def a2():
    return system("A2")


@pytest.fixture(scope="session")
def b2():
    return system("B2")


@pytest.fixture(scope="session")
def c2():
    return system("C2")


@pytest.fixture(scope="session")
def g2():
    return system("G2")


@pytest.fixture(scope="session")
def a3():
    return system("A3")


@pytest.fixture(scope="session")
def b3():
    return system("B3")


@pytest.fixture(scope="session")
def h2():
    return system("H2")


@pytest.fixture(scope="session")
def h3():
    return system("H3")
