import pytest

from sp4artin.characters import character_table
from sp4artin.standard import build_standard_groups

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def std():
    return build_standard_groups()


@pytest.fixture(scope="session")
def table(std):
    return character_table(std.G)


@pytest.fixture(scope="session")
def tower():
    from sp4artin.tower import build_tower

    return build_tower(include_degree40=True)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
