import numpy as np
import pytest

from unruh_discord import AccelParam, TruncationPolicy

T_GRID = [round(0.1 * k, 1) for k in range(10)]


@pytest.fixture
def policy():
    return TruncationPolicy.adaptive(1e-12)


@pytest.fixture
def half():
    return AccelParam(0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(20100216)


_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): exit criterion, reported in the terminal summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and report.when == "call":
        _ACCEPTANCE.append((marker.args[0], report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome, duration in sorted(_ACCEPTANCE, key=lambda r: int(r[0].split()[0][2:])):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {label}  ({duration:.2f} s)")
