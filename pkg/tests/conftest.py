"""Shared pytest plumbing: relay acceptance summary lines to the report."""

ACCEPTANCE_LINES = []


def pytest_runtest_logreport(report):
    if (report.when == "call" and report.failed
            and "test_criterion_" in report.nodeid):
        name = report.nodeid.split("::")[-1]
        ACCEPTANCE_LINES.append(f"[FAIL] {name}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance summary")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
