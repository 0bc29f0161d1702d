from __future__ import annotations

import pytest

_criteria: dict[str, tuple[str, bool]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if not item.name.startswith("test_criterion_"):
        return
    number = item.name.split("_")[2]
    doc = (item.function.__doc__ or "").strip().splitlines()
    title = doc[0] if doc else item.name
    ok = _criteria.get(number, (title, True))[1] and not report.failed
    if report.when == "call" or report.failed:
        _criteria[number] = (title, ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {int(number):2d}: {'PASS' if ok else 'FAIL'}  {title}")
