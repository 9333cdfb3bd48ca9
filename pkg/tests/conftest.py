import os

import pytest
from hypothesis import HealthCheck, settings

from perfcx.ring import Ring

settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


@pytest.fixture
def qxy():
    return Ring("x,y")


@pytest.fixture
def qxyz():
    return Ring("x,y,z")


@pytest.fixture
def qx():
    return Ring("x")


# -- acceptance criteria: one summary line per criterion ---------------------------------------

_ACCEPTANCE = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or not mark.args:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        number, title, limit = mark.args
        _ACCEPTANCE.append((number, title, limit, rep.passed, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, limit, passed, duration in sorted(_ACCEPTANCE):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {duration:7.2f} s (limit {limit} s)  {title}")
