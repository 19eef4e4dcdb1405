import re
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# criterion number -> list of (test name, outcome, reason)
_CRITERIA: dict[int, list[tuple[str, str, str]]] = {}
_NAME = re.compile(r"test_criterion_(\d+)")


def pytest_runtest_logreport(report):
    m = _NAME.search(report.nodeid)
    if not m or "test_acceptance" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if hasattr(report, "wasxfail"):
            outcome = "xfail" if report.skipped else "xpass"
        else:
            outcome = report.outcome
        reason = getattr(report, "wasxfail", "")
        _CRITERIA.setdefault(int(m.group(1)), []).append((report.nodeid.split("::")[-1], outcome, reason))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        parts = _CRITERIA[n]
        ok = all(o == "passed" for _, o, _ in parts)
        tr.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}")
        if not ok:
            for name, o, reason in parts:
                if o != "passed":
                    tr.write_line(f"    {name}: {o}" + (f" ({reason})" if reason else ""))


@pytest.fixture(scope="session")
def octagon_rows():
    from riesz_forge import chains
    return chains.octagon_sections([1, 2, 3], timing=True)
