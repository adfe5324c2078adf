import random
import sys

import pytest

from smallcancel import build_r0, preset, symmetrize


@pytest.fixture(scope="session")
def h1():
    return preset("amalgam-h1")


@pytest.fixture(scope="session")
def h0():
    return preset("amalgam-h0")


@pytest.fixture(scope="session")
def R80(h1):
    """Symmetrized closure of the full-scale r0, shared across modules."""
    return symmetrize(h1, [build_r0(h1, 80)])


@pytest.fixture
def rng():
    return random.Random(20240917)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
