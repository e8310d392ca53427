import numpy as np
import pytest

from wvcgraph import default_scenarios


@pytest.fixture(scope="session")
def scenarios():
    return default_scenarios()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_CRITERIA = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(ok, detail)`` then assert on ``ok``."""
    name = request.node.name

    def record(ok, detail=""):
        _CRITERIA.append((name, bool(ok), detail))
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
