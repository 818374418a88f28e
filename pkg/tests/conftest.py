"""Shared test plumbing.

The acceptance suite appends one summary line per criterion to
ACCEPTANCE_LINES; the hook below prints them after the normal pytest
summary so the verdict survives output capturing.
"""

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
