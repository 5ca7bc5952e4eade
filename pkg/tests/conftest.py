import functools

import pytest

from weylkit.lie import build_h2
from weylkit.weyl import compute_global_weyl, compute_local_weyl


@functools.lru_cache(maxsize=None)
def h2():
    return build_h2()


@functools.lru_cache(maxsize=None)
def weyl(kind, la):
    fn = compute_global_weyl if kind == "global" else compute_local_weyl
    return fn(h2(), la)


@functools.lru_cache(maxsize=None)
def endo(la):
    from weylkit.endo import compute_A_lambda
    return compute_A_lambda(h2(), la, weyl("global", la))


@pytest.fixture(scope="session")
def g():
    return h2()


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
