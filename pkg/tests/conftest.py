"""Shared pytest plumbing.

The acceptance-gate tests record one ``[criterion NN] PASS/FAIL`` line
each; this hook prints them in a dedicated terminal section at the end of
the run so the gate verdict is visible in any pytest invocation.
"""

GATE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if GATE_LINES:
        terminalreporter.section("acceptance gate")
        for line in GATE_LINES:
            terminalreporter.write_line(line)
