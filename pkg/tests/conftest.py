"""Shared fixtures plus a terminal summary for the acceptance criteria."""
import numpy as np
import pytest


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "acceptance(name): marks a test as one acceptance criterion; "
        "its outcome is echoed in the terminal summary.",
    )
    config._acceptance_results = {}
    config._acceptance_notes = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    results = item.config._acceptance_results
    name = marker.args[0]
    if report.when == "call":
        results[name] = "PASS" if report.passed else "FAIL"
    elif report.when == "setup" and report.failed:
        results[name] = "FAIL"
    elif report.when == "setup" and report.skipped:
        results[name] = "SKIP"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance_results", {})
    if not results:
        return
    notes = getattr(config, "_acceptance_notes", {})
    terminalreporter.section("acceptance criteria")
    for name in sorted(results):
        line = f"{results[name]}  {name}"
        if name in notes:
            line += f"  [{notes[name]}]"
        terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def acceptance_notes(request):
    """Mutable mapping from criterion name to a short note for the summary."""
    return request.config._acceptance_notes
