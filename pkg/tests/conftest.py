"""Prints one pass/fail line per acceptance criterion at the end of the run.

Tests opt in with ``@pytest.mark.criterion(number, "title")``; a criterion
passes only if every test carrying its number passed.
"""

import pytest

_results: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        number, title = marker.args
        entry = _results.setdefault(number, {"title": title, "passed": True, "tests": []})
        entry["passed"] &= report.passed
        entry["tests"].append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        entry = _results[number]
        status = "PASS" if entry["passed"] else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {number}: {status}  {entry['title']}")
        if not entry["passed"]:
            for name, outcome in entry["tests"]:
                if outcome != "passed":
                    terminalreporter.write_line(f"    {outcome}: {name}")
