import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from taildom import PopulationModel, normal  # noqa: E402


@pytest.fixture
def two_group_model():
    """Equal-size groups N(100, 10^2) and N(101, 11^2)."""
    return PopulationModel.of(("X1", 1.0, normal(100, 10)), ("X2", 1.0, normal(101, 11)))


ACCEPTANCE_RESULTS: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[n])
