from __future__ import annotations

import pytest

_LINES: list = []


@pytest.fixture
def criterion_line():
    """Record one pass/fail line per acceptance criterion."""

    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
        _LINES.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_LINES):
        terminalreporter.write_line(line)
