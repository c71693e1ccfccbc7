import numpy as np
import pytest

from hnsexp.core import cyclic_group_algebra

_CRITERIA = []


@pytest.fixture
def g47():
    return cyclic_group_algebra(4)


@pytest.fixture
def g51():
    return cyclic_group_algebra(5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test still asserts on its own."""

    def record(label, ok, detail=""):
        _CRITERIA.append((label, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
