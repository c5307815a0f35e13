import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record the outcome of an acceptance criterion, then assert it."""

    def check(number: int, ok: bool, detail: str):
        prev_ok, prev = _CRITERIA.get(number, (True, ""))
        _CRITERIA[number] = (prev_ok and ok, f"{prev}; {detail}" if prev else detail)
        assert ok, f"criterion {number}: {detail}"

    return check


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, detail = _CRITERIA[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {detail}")
