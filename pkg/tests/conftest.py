import numpy as np
import pytest

from xyent.params import QuadratureConfig


@pytest.fixture
def rng():
    return np.random.default_rng(20071)


@pytest.fixture
def quad():
    return QuadratureConfig()


def ghz3() -> np.ndarray:
    v = np.zeros(8)
    v[0] = v[7] = 1 / np.sqrt(2)
    return np.outer(v, v)


def bell() -> np.ndarray:
    v = np.zeros(4)
    v[0] = v[3] = 1 / np.sqrt(2)
    return np.outer(v, v)


def up_projector(n_spins: int) -> np.ndarray:
    m = np.zeros((2 ** n_spins, 2 ** n_spins))
    m[0, 0] = 1.0
    return m


# (criterion id, passed, detail) lines collected by test_acceptance.py.
ACCEPTANCE: list[tuple[str, bool, str]] = []


def record(criterion: str, passed: bool, detail: str) -> None:
    ACCEPTANCE.append((criterion, bool(passed), detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {criterion}: {detail}")
