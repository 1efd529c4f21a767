import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rfca import CATALOG  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240611, help="seed for randomized tests")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def z2():
    return CATALOG["z2"]


@pytest.fixture
def z6():
    return CATALOG["z6"]


@pytest.fixture
def semilattice():
    return CATALOG["semilattice2"]


@pytest.fixture
def trivial():
    return CATALOG["trivial"]


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance" in rep.nodeid and rep.when == "call":
                lines.append((rep.nodeid.split("::")[-1], outcome))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(lines):
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
