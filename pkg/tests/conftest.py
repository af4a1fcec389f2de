import os
import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("gleafkit", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "gleafkit"))

SESSION_START = time.perf_counter()
CRITERIA: dict[int, str] = {}


def pytest_collection_modifyitems(session, config, items):
    # acceptance last, so its final test can time the whole session
    items.sort(key=lambda item: item.fspath.basename == "test_acceptance.py")


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[n])


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for an acceptance criterion (printed at the end)."""
    def record(n: int, ok: bool, detail: str) -> None:
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        CRITERIA[n] = line
        print(line)
    return record
