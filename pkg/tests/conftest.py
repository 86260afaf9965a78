from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rationals(max_num: int = 50, max_den: int = 12, min_value=None, max_value=None):
    s = st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))
    if min_value is not None:
        s = s.filter(lambda x: x >= min_value)
    if max_value is not None:
        s = s.filter(lambda x: x <= max_value)
    return s


# -- acceptance summary ------------------------------------------------------

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, title): acceptance criterion k")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = report.user_properties and dict(report.user_properties).get("criterion")
    if marker:
        k, title = marker
        _CRITERIA[k] = (title, "PASS" if report.passed else "FAIL")


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_makereport(item, call):
    m = item.get_closest_marker("criterion")
    if m and ("criterion", tuple(m.args)) not in item.user_properties:
        item.user_properties.append(("criterion", tuple(m.args)))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        title, verdict = _CRITERIA[k]
        terminalreporter.write_line(f"criterion {k}: {verdict}  {title}")
