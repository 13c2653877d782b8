import numpy as np
import pytest

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_simplex_in_cube(rng, n, min_det=1e-3):
    from optinterp import Simplex

    while True:
        V = rng.random((n + 1, n))
        if abs(np.linalg.det(np.hstack([V, np.ones((n + 1, 1))]))) > min_det:
            return Simplex(V)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {msg}")
