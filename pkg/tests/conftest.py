"""Shared test plumbing: the acceptance suite registers one summary
line per criterion here, and the lines are echoed after the run even
when output capture is on."""

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
