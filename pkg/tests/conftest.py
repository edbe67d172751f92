"""Shared fixtures and the acceptance-criteria terminal summary."""

import numpy as np
import pytest

# (criterion number, label, passed) records appended by test_acceptance.py
ACCEPTANCE_RESULTS: list[tuple[int, str, bool]] = []


def record_criterion(number: int, label: str, passed: bool):
    ACCEPTANCE_RESULTS.append((number, label, passed))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number, label, passed in sorted(set(ACCEPTANCE_RESULTS)):
        status = "PASS" if passed else "FAIL"
        tr.write_line(f"[criterion {number:2d}] {status}  {label}")
