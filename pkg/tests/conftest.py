"""Shared pytest plumbing.

The acceptance tests in test_acceptance.py register one line per criterion
through record_criterion(); the terminal-summary hook prints the collected
lines after the normal pytest output so the scoreboard survives output
capture.
"""

_ACCEPTANCE_LINES: list[str] = []


def record_criterion(num: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    _ACCEPTANCE_LINES.append(f"[criterion {num:2d}] {status} - {detail}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
