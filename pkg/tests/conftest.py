import time

import pytest

from clarisim.config import load_scenario

ACCEPTANCE_LINES = []
SUITE_BUDGET_S = 60.0
_t0 = time.perf_counter()


def report(label: str, ok: bool, detail: str = "") -> None:
    """Record one acceptance line and fail the calling test if ``ok`` is false."""
    line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" -- {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture
def scenario():
    return load_scenario


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - _t0
    session.config._clarisim_elapsed = elapsed
    if ACCEPTANCE_LINES and elapsed > SUITE_BUDGET_S:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    elapsed = getattr(config, "_clarisim_elapsed", time.perf_counter() - _t0)
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
    ok = elapsed <= SUITE_BUDGET_S
    terminalreporter.write_line(
        f"[{'PASS' if ok else 'FAIL'}] AC7 full suite runtime -- {elapsed:.1f} s (budget {SUITE_BUDGET_S:.0f} s)")
