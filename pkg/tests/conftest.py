import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, title): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    label, title = marker.args
    ok, _ = _CRITERIA.get(label, (True, title))
    _CRITERIA[label] = (ok and not report.failed, title)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA, key=lambda s: (len(s), s)):
        ok, title = _CRITERIA[label]
        terminalreporter.write_line(f"criterion {label}: {'PASS' if ok else 'FAIL'}  {title}")
