import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# criterion name -> list of outcomes of its parametrized cases
ACCEPTANCE_RESULTS: dict[str, list[bool]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when != "call" and not report.failed:
        return
    name = report.nodeid.split("::")[-1].split("[")[0]
    ACCEPTANCE_RESULTS.setdefault(name, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcomes in sorted(ACCEPTANCE_RESULTS.items()):
        status = "PASS" if all(outcomes) else "FAIL"
        terminalreporter.write_line(f"[{status}] {name} ({sum(outcomes)}/{len(outcomes)} cases)")
