import pytest

from gyrolab.groups import builtin_groups
from gyrolab.gyro import validate_gyrogroup
from gyrolab.search import run_search

CORPUS_ORDERS = range(1, 9)


@pytest.fixture(scope="session")
def groups():
    return {name: validate_gyrogroup(t) for name, t in builtin_groups().items()}


@pytest.fixture(scope="session")
def searches():
    return {n: run_search(n) for n in CORPUS_ORDERS}


@pytest.fixture(scope="session")
def corpus(searches):
    """Every gyrogroup class of order <= 8, keyed by (order, index)."""
    return {
        (n, i): validate_gyrogroup(t)
        for n, res in searches.items()
        for i, t in enumerate(res.classes)
    }


@pytest.fixture(scope="session")
def G8(searches):
    """First proper (non-group) gyrogroup of order 8 in canonical order."""
    for t in searches[8].classes:
        G = validate_gyrogroup(t)
        if not G.is_group():
            return G
    raise AssertionError("order-8 search produced no proper gyrogroup")


_acceptance: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when != "call" and not report.failed:
        return
    name = report.nodeid.split("::")[-1]
    status = "PASS" if report.passed else "FAIL"
    lines = [ln for ln in report.capstdout.splitlines() if ln.startswith("AC")]
    line = lines[-1] if lines else f"{status}  {name}"
    if status == "FAIL" and "FAIL" not in line:
        line = f"FAIL  {name}: {line}"
    _acceptance[name] = line


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        terminalreporter.write_line(_acceptance[name])
