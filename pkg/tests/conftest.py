import time
from contextlib import contextmanager

import pytest

_RESULTS: list[tuple[int, str, str, float, float | None]] = []


def _line(number, status, title, elapsed, limit_s) -> str:
    limit = "no limit" if limit_s is None else f"limit {limit_s:g}s"
    return f"criterion {number:>2} {status}  {title}  ({elapsed:.2f}s, {limit})"


@contextmanager
def _criterion(number: int, title: str, limit_s: float | None = None):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        assert limit_s is None or elapsed < limit_s, f"took {elapsed:.2f}s, limit {limit_s}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        _RESULTS.append((number, status, title, elapsed, limit_s))
        print(_line(number, status, title, elapsed, limit_s))


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for row in sorted(_RESULTS, key=lambda r: r[0]):
        terminalreporter.write_line(_line(*row))
