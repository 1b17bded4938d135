from __future__ import annotations

import re

_RESULTS: dict[int, tuple[str, str, float]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    num = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.outcome == "passed" else "FAIL"
        _RESULTS[num] = (status, m.group(2), report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_RESULTS):
        status, name, secs = _RESULTS[num]
        terminalreporter.write_line(f"criterion {num:2d} {status}  {name}  ({secs:.2f}s)")
