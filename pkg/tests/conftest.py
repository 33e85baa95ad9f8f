import numpy as np
import pytest

from regaudit import GroupPartition

_acceptance_lines = []


@pytest.fixture
def verdict(request):
    """Record a one-line pass/fail for an acceptance criterion."""
    label = request.node.get_closest_marker("criterion").args[0]
    yield
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    _acceptance_lines.append(f"{'PASS' if ok else 'FAIL'}  {label}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)


def make_partition(**groups):
    return GroupPartition.from_groups({k: np.asarray(v, dtype=float) for k, v in groups.items()})


@pytest.fixture
def ab_split():
    return make_partition(a=[1, 2, 3, 4], b=[5, 6, 7, 8])
