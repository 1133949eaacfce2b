"""Shared pytest plumbing: collect acceptance-criterion verdict lines.

Each acceptance test registers a one-line verdict through ``record_verdict``;
the lines are echoed in the terminal summary so a plain ``pytest -v`` run shows
one pass/fail line per criterion regardless of output capture.
"""

from __future__ import annotations

_VERDICTS: list[str] = []


def record_verdict(line: str) -> None:
    _VERDICTS.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in _VERDICTS:
        terminalreporter.write_line(line)
