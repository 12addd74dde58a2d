from __future__ import annotations

import pytest

from choicecensus.census import run_census
from choicecensus.core import GroundSet


@pytest.fixture(scope="session")
def g4() -> GroundSet:
    return GroundSet.of_size(4)


@pytest.fixture(scope="session")
def g3() -> GroundSet:
    return GroundSet.of_size(3)


@pytest.fixture(scope="session")
def census4(g4):
    """Full four-item census over every model: ``(records, table)``."""
    return run_census(g4)


@pytest.fixture(scope="session")
def records4(census4):
    return census4[0]


@pytest.fixture(scope="session")
def census3(g3):
    return run_census(g3)


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)
