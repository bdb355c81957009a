import math

import pytest

from polystab import PolytropeConfig


def central_diff(f, x, h=1e-6):
    return (f(x + h) - f(x - h)) / (2 * h)


@pytest.fixture
def unit_b():
    return lambda n: PolytropeConfig(n, 1.0)


SQRT2 = math.sqrt(2.0)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
