import sys


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance-gate verdict lines after the test summary, where
    they stay visible even when stdout capture is on."""
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None) if mod else None
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
