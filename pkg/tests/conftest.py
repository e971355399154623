from __future__ import annotations

import contextlib
import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

_ACCEPTANCE: list[tuple[str, bool | None, str]] = []


@contextlib.contextmanager
def _criterion(name: str):
    start = time.perf_counter()
    info: dict = {"detail": ""}
    try:
        yield info
    except pytest.skip.Exception:
        _ACCEPTANCE.append((name, None, info["detail"]))
        raise
    except BaseException:
        _ACCEPTANCE.append((name, False, info["detail"]))
        raise
    else:
        took = time.perf_counter() - start
        _ACCEPTANCE.append((name, True, f"{info['detail']} ({took:.2f}s)".strip()))


@pytest.fixture
def criterion():
    """Context manager recording one acceptance criterion's pass/fail line."""
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        status = "SKIP" if ok is None else "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  {detail}")
