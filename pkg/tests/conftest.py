from collections import defaultdict

import pytest

from helpers import catalog_chart

# acceptance bookkeeping: every test marked ``criterion(n)`` contributes to the
# verdict for n; an expected failure counts as a failure of the criterion

_outcomes: dict[int, list[bool]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", m.args[0]))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        ok = report.passed and not hasattr(report, "wasxfail")
        _outcomes[crit].append(ok)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_outcomes):
        verdict = "PASS" if all(_outcomes[crit]) else "FAIL"
        terminalreporter.write_line(f"criterion {crit}: {verdict}")


@pytest.fixture
def chart_of():
    return catalog_chart
