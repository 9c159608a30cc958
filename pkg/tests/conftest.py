import sys

import pytest

from tubeserre import TubeContext, indecomposable, simple


@pytest.fixture
def T25():
    return TubeContext(2, 5)


@pytest.fixture
def S0(T25):
    return simple(T25, 0)


@pytest.fixture
def S1(T25):
    return simple(T25, 1)


@pytest.fixture
def M02(T25):
    return indecomposable(T25, 0, 2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "VERDICTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
