import numpy as np
import pytest

from shpattern.grid import Grid2D


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def grid():
    return Grid2D(16, 12, np.pi / 2, 1.3)


@pytest.fixture
def default_grid():
    return Grid2D.square(100, np.pi / 2)


ACCEPTANCE_LINES = []


@pytest.fixture
def verdict():
    """Record and print one PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(number, title, ok, detail):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
