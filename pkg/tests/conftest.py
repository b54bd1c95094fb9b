from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
    derandomize=True,
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            num, title = m.args
            _CRITERIA[num] = {"title": title, "nodeid": item.nodeid, "outcome": "not run", "duration": 0.0}


def pytest_runtest_logreport(report):
    for rec in _CRITERIA.values():
        if rec["nodeid"] != report.nodeid:
            continue
        if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
            rec["outcome"] = report.outcome
            rec["duration"] += report.duration


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        rec = _CRITERIA[num]
        mark = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}.get(rec["outcome"], "----")
        tr.write_line(f"criterion {num:2d}: {mark}  {rec['title']} ({rec['duration']:.1f}s)")
    passed = sum(r["outcome"] == "passed" for r in _CRITERIA.values())
    tr.write_line(f"{passed}/{len(_CRITERIA)} acceptance criteria pass")


@pytest.fixture(scope="session")
def gf11():
    from mdslab.field import field_new

    return field_new(11)
