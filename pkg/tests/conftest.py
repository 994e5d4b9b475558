import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from tropfan import MarkedPolygon  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.large_base_example, HealthCheck.filter_too_much]
)
settings.load_profile("default")

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture
def square():
    return MarkedPolygon.from_points([(0, 0), (1, 0), (0, 1), (1, 1)])


@pytest.fixture
def unit_triangle():
    return MarkedPolygon.from_points([(0, 0), (1, 0), (0, 1)])


@pytest.fixture
def triangle2():
    return MarkedPolygon.from_points([(0, 0), (2, 0), (0, 2)])


@pytest.fixture
def rectangle():
    return MarkedPolygon.from_points([(0, 0), (2, 0), (2, 1), (0, 1)])


# -- one PASS/FAIL line per acceptance criterion ----------------------------------

_criteria_outcomes: dict = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    number = int(report.nodeid.split("test_criterion_")[1][:2])
    if report.failed or (report.when == "call" and report.passed):
        previous = _criteria_outcomes.get(number, True)
        _criteria_outcomes[number] = previous and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria_outcomes:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        if number not in _criteria_outcomes:
            continue
        status = "PASS" if _criteria_outcomes[number] else "FAIL"
        terminalreporter.write_line(f"{status} criterion {number}: {CRITERIA[number]}")
