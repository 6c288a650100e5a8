"""Shared pytest hooks.

The acceptance tests register one PASS/FAIL line each; printing them from a
terminal-summary hook keeps them visible even though pytest captures stdout
of passing tests.
"""

ACCEPTANCE_SCORECARD = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_SCORECARD:
        terminalreporter.section("acceptance scorecard")
        for line in ACCEPTANCE_SCORECARD:
            terminalreporter.write_line(line)
