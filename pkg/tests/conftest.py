"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

from collections import defaultdict

import pytest

_RESULTS = defaultdict(list)  # number -> [(title, outcome, seconds, nodeid)]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        number, title = mark.args
        _RESULTS[number].append((title, rep.outcome, rep.duration, item.nodeid))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_RESULTS):
        rows = _RESULTS[number]
        ok = all(outcome == "passed" for _, outcome, _, _ in rows)
        seconds = sum(s for _, _, s, _ in rows)
        title = rows[0][0]
        parts = f" ({len(rows)} parts)" if len(rows) > 1 else ""
        tr.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}{parts}  [{seconds:.2f}s]")
        for _, outcome, _, nodeid in rows:
            if outcome != "passed":
                tr.write_line(f"              {outcome}: {nodeid}")
