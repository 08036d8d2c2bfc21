import random
from collections import OrderedDict

import pytest

from splicetype import corpus

_criteria = OrderedDict((i, None) for i in range(1, 13))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    number = getattr(report, "criterion", None)
    if number is None:
        return
    if report.when == "call" or report.failed:
        ok = report.passed and _criteria[number] is not False
        _criteria[number] = ok if report.when == "call" else False


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if all(v is None for v in _criteria.values()):
        return
    terminalreporter.section("acceptance criteria")
    for number, ok in _criteria.items():
        status = "NOT RUN" if ok is None else ("PASS" if ok else "FAIL")
        terminalreporter.write_line(f"AC{number:>2}: {status}")


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def pair711():
    return corpus.two_node_7_11()


@pytest.fixture
def pair4911():
    return corpus.two_node_49_11()


@pytest.fixture
def e8():
    return corpus.e8()
