import sys
from collections import defaultdict
from pathlib import Path

import pytest

HERE = Path(__file__).parent
FIXTURES = HERE / "fixtures"
sys.path.insert(0, str(HERE))

CRITERIA = {
    1: "operator property suite",
    2: "restriction coverage",
    3: "annotation listing round trip",
    4: "OWL to DL mapping rows",
    5: "evaluator agrees with brute-force oracle",
    6: "YoungAge worked values",
    7: "scenario ontologies",
    8: "capability gating",
    9: "stripping fuzzy labels is neutral",
}

_outcomes = defaultdict(list)


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true",
                     help="also run the full-grid brute-force oracle checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion exercised by the test")
    config.addinivalue_line("markers", "slow: long-running oracle checks (needs --run-slow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _outcomes[marker.args[0]].append(report.passed or report.skipped)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance")
    for n, title in CRITERIA.items():
        results = _outcomes.get(n)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {n} {status}  {title} ({len(results or ())} checks)")


@pytest.fixture
def fixtures():
    return FIXTURES
