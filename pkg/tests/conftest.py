import numpy as np
import pytest

from chargetomo.core import Grid1D, Grid2D

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def psi_grid():
    return Grid2D.square(12.0, 256)


@pytest.fixture(scope="session")
def mode_grid():
    return Grid1D(-12.0, 12.0, 256)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
