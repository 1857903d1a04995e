import pytest

from dartflip.checks import CONVEX5, DC11, T4

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def t4():
    return T4


@pytest.fixture
def convex5():
    return CONVEX5


@pytest.fixture
def dc11():
    return DC11


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
