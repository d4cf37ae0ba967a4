import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_criteria = {}


def pytest_runtest_logreport(report):
    if report.when == "call" or report.outcome == "failed":
        name = report.nodeid.split("::")[-1]
        if report.nodeid.startswith("tests/test_acceptance.py") and name.startswith("test_criterion_"):
            num = int(name.split("_")[2])
            if report.outcome == "failed" or num not in _criteria:
                _criteria[num] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    from test_acceptance import TITLES
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        verdict = "PASS" if _criteria[num] == "passed" else "FAIL"
        terminalreporter.write_line("criterion %2d: %s  %s" % (num, verdict, TITLES[num]))
