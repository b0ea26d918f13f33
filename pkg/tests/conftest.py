from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden"

_criteria: dict[str, list[str]] = defaultdict(list)


@pytest.fixture
def golden() -> Path:
    return GOLDEN


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[marker.args[0]].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")

    def order(label: str):
        digits = "".join(c for c in label if c.isdigit())
        return (int(digits) if digits else 0, label)

    for label in sorted(_criteria, key=order):
        outcomes = _criteria[label]
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"{label}: {status} ({len(outcomes)} checks)")
