import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

# criterion id -> (status, detail); filled by test_acceptance
ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: [int(x) if x.isdigit() else x for x in k.replace("-", ".").split(".")]):
        status, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {status}  {detail}")
