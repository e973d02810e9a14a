import os

import pytest
from hypothesis import HealthCheck, settings

from lafsat.formula import CnfFormula

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=300, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

TOY = [[1, 2, 3], [2, 3, 4], [1, 4]]
UNIQUE6 = [[1, 2, 3], [2, 4, 5], [2, 6], [3, 4, 6]]
COUNTEREXAMPLE = [[1, 2, 3], [2, 4, 5], [2, 6], [3, 4, 6], [1, 7, 8], [1, 9, 10],
                  [1, 11, 12], [7, 13, 14], [9, 13, 15], [11, 14, 15]]


@pytest.fixture
def toy():
    return CnfFormula(4, TOY)


@pytest.fixture
def unique6():
    return CnfFormula(6, UNIQUE6)


@pytest.fixture
def counterexample():
    return CnfFormula(15, COUNTEREXAMPLE)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
