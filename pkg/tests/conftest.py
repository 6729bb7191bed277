import pytest

from wmrr.datasets import table1, table1_clean, table1_fds

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def dirty():
    return table1()


@pytest.fixture
def clean():
    return table1_clean()


@pytest.fixture
def fds(dirty):
    return table1_fds(dirty.schema)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
