import time
from contextlib import contextmanager

import pytest

from bmst.core import BmstInstance, load_fixture, parse_instance

ACCEPTANCE: list[str] = []


@pytest.fixture(scope="session")
def fig1() -> BmstInstance:
    return parse_instance(load_fixture("fig1.bmst"))


@contextmanager
def criterion(number: int, title: str, limit: float):
    """Time a block and record one PASS/FAIL line for the acceptance summary."""
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit:.0f}s"
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        line = f"FAIL [{number:2d}] {title} ({elapsed:.2f}s): {str(exc).splitlines()[0] if str(exc) else type(exc).__name__}"
        ACCEPTANCE.append(line)
        print(line)
        raise
    line = f"PASS [{number:2d}] {title} ({elapsed:.2f}s < {limit:.0f}s)"
    ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split("[")[1].split("]")[0])):
            terminalreporter.write_line(line)
