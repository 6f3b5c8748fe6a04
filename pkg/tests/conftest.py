import numpy as np
import pytest


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def row_sum_map():
    """Real 2x2 -> 3x3 map diag(k11 + k12, k21 + k22, 0): sends symmetric
    matrices to symmetric ones but is not *-linear."""
    from hillrep.linmap import from_function

    return from_function(lambda K: np.diag([K[0, 0] + K[0, 1], K[1, 0] + K[1, 1], 0]), 3, 2)


ROW_SUM_CHOI = np.array([
    [1, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0],
])
