"""Shared pytest config.

The acceptance tests (tests/test_acceptance.py) each cover one numbered
criterion; this hook prints a one-line PASS/FAIL verdict per criterion at
the end of the run so the gate is readable without scrolling the log.
"""

import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    verdicts = {}
    for outcome in ("passed", "failed", "error", "skipped"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            match = _CRITERION.search(nodeid)
            if not match:
                continue
            number, label = int(match.group(1)), match.group(2)
            verdict = "PASS" if outcome == "passed" else outcome.upper()
            if outcome == "passed" and getattr(report, "when", "call") != "call":
                continue
            # a failed setup/teardown outranks a passed call
            if verdicts.get((number, label)) in ("FAILED", "ERROR"):
                continue
            verdicts[(number, label)] = verdict
    if not verdicts:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for (number, label), verdict in sorted(verdicts.items()):
        name = label.replace("_", " ")
        terminalreporter.write_line(f"criterion {number:02d} ({name}): {verdict}")
