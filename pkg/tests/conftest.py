"""Shared test plumbing: verdict lines that survive output capture."""

import pytest

_verdicts = []


@pytest.fixture
def verdict():
    """Record one acceptance verdict line; echoed in the terminal summary."""

    def record(label, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        line = f"criterion {label}: {status}"
        if detail:
            line += f" -- {detail}"
        _verdicts.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _verdicts:
        terminalreporter.section("acceptance verdicts")
        for line in _verdicts:
            terminalreporter.write_line(line)
