import os

import pytest
from hypothesis import HealthCheck, settings

from anovatk import datasets

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=1000,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_RESULTS = []


def record(number, title, passed, detail, *, supplementary=False):
    """Register one acceptance line; supplementary lines never decide a criterion."""
    ACCEPTANCE_RESULTS.append((number, supplementary, title, bool(passed), detail))


@pytest.fixture(scope="session")
def table_1a():
    return datasets.load_grouped("1A")


@pytest.fixture(scope="session")
def table_2a():
    return datasets.load_grouped("2A")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, extra, title, passed, detail in sorted(ACCEPTANCE_RESULTS, key=lambda r: r[:2]):
        if extra:
            status = "holds" if passed else "fails"
            terminalreporter.write_line(f"  [info] criterion {number:>2} supplementary ({status}): {title} | {detail}")
        else:
            status = "PASS" if passed else "FAIL"
            terminalreporter.write_line(f"[{status}] criterion {number:>2}: {title} | {detail}")
