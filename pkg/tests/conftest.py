import os

import pytest
from hypothesis import HealthCheck, settings

#: Seed used by every randomized check in the suite.
SEED = 1729

settings.register_profile(
    "repro", derandomize=True, max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repro"))

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    """Record one PASS/FAIL line per acceptance criterion."""
    def record(label: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" -- {detail}" if detail else ""))
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
