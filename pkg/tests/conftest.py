import sys

import pytest

from brace_lab.catalog import catalog


@pytest.fixture
def z4():
    return catalog("z4adj").obj


@pytest.fixture
def ut3():
    return catalog("ut3:F2").obj


@pytest.fixture
def ut3_J():
    return catalog("ut3:F2").extras["J"]


def z4_tables(k=2):
    add = [[(x + y) % 4 for y in range(4)] for x in range(4)]
    mul = [[(x + y + k * x * y) % 4 for y in range(4)] for x in range(4)]
    return add, mul


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for res in sorted(mod.RESULTS, key=lambda r: r.number):
        terminalreporter.write_line(res.line())
