import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import T_MONO, T_STRIPES, T_VERT, identity_machine, tileset  # noqa: E402

from tilemealy.reduction import build_reduction  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def ident():
    return identity_machine()


@pytest.fixture
def mono():
    return tileset(T_MONO)


@pytest.fixture
def vert():
    return tileset(T_VERT)


@pytest.fixture
def stripes():
    return tileset(T_STRIPES)


@pytest.fixture
def red_mono(mono):
    return build_reduction(mono)


@pytest.fixture
def red_vert(vert):
    return build_reduction(vert)


@pytest.fixture
def red_stripes(stripes):
    return build_reduction(stripes)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
