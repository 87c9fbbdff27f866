import pytest
from hypothesis import HealthCheck, settings

from grmcurves.fields import build_tower

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE: dict[int, tuple[str, bool]] = {}


@pytest.fixture(scope="session")
def towers():
    cache = {}

    def get(p, e=1, m=1):
        if (p, e, m) not in cache:
            cache[p, e, m] = build_tower(p, e, m)
        return cache[p, e, m]

    return get


@pytest.fixture
def criterion():
    """Record one acceptance criterion; the summary hook prints the ledger."""

    def record(number: int, title: str, ok: bool):
        ACCEPTANCE[number] = (title, bool(ok))
        print(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}")
        assert ok, f"acceptance criterion {number} failed: {title}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}")
