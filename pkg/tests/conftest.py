import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from vilwav.tree import RootedTree
from vilwav.wavelet import build_system

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

# The two seven-vertex trees used throughout as worked p=7 instances.
TREE7_A_PARENT = (0, 3, 3, 0, 5, 0, 4)
TREE7_B_PARENT = (0, 3, 3, 0, 5, 0, 2)

# One pass/fail line per acceptance criterion, printed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def star3():
    return build_system(RootedTree.validate([0, 0, 0], 3))


@pytest.fixture(scope="session")
def chain3():
    return build_system(RootedTree.validate([0, 0, 1], 3))


@pytest.fixture(scope="session")
def tree7_a():
    return RootedTree.validate(TREE7_A_PARENT, 7)


@pytest.fixture(scope="session")
def tree7_b():
    return RootedTree.validate(TREE7_B_PARENT, 7)


@pytest.fixture
def rng():
    return np.random.default_rng(20260824)
