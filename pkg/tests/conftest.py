from __future__ import annotations

import mpmath
import pytest

_criteria: dict[int, dict] = {}


@pytest.fixture(autouse=True)
def mpmath_precision():
    # oracles in the tests run at 200 bits unless a test asks for more
    with mpmath.workprec(200):
        yield


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    entry = _criteria.setdefault(number, {"title": title, "failed": [], "ran": 0})
    if report.when == "call" or (report.when == "setup" and report.failed):
        entry["ran"] += 1
        if report.failed:
            entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "FAIL" if entry["failed"] else "PASS"
        line = f"CRITERION {number:>2} {status} {entry['title']}"
        if entry["failed"]:
            line += f" (failing: {', '.join(entry['failed'])})"
        terminalreporter.write_line(line)
