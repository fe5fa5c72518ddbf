"""Collects the outcome of every acceptance test and prints one line per criterion."""

import pytest

CRITERIA = {
    1: "coboundary algebra",
    2: "dual-method cohomology",
    3: "realizability matches exhaustive search",
    4: "classification and automorphisms",
    5: "reduced type of A_G",
    6: "strictification pipeline",
    7: "obstruction-class invariance",
    8: "extension sanity",
    9: "CLI round-trip and determinism",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): test belongs to acceptance criterion n")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    n = getattr(report, "_acceptance", None)
    if n is not None:
        _outcomes.setdefault(n, []).append(report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        rep._acceptance = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        if n not in _outcomes:
            terminalreporter.write_line(f"criterion {n} ({title}): NOT RUN")
            continue
        res = _outcomes[n]
        verdict = "PASS" if all(res) else "FAIL"
        terminalreporter.write_line(f"criterion {n} ({title}): {verdict} ({sum(res)}/{len(res)} tests)")
