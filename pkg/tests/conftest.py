import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from cornering import fixtures  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def baking():
    return fixtures.baking()


@pytest.fixture(scope="session")
def money():
    return fixtures.money_baking()


@pytest.fixture(scope="session")
def baking_row():
    return fixtures.baking_row()


@pytest.fixture(scope="session")
def money_row():
    return fixtures.money_row()


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
