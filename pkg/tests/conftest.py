import numpy as np
import pytest
from hypothesis import strategies as st

from nbho import ParticleSystem

ACCEPTANCE_LINES = []


@st.composite
def systems(draw, min_n=2, max_n=7, coupling=(-1.0, 1.0), dimension=None):
    n = draw(st.integers(min_n, max_n))
    real = lambda lo, hi: st.floats(lo, hi, allow_nan=False, allow_infinity=False)
    masses = draw(st.lists(real(0.1, 10.0), min_size=n, max_size=n))
    k = draw(st.lists(real(*coupling), min_size=n, max_size=n))
    pairs = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            pairs[(i, j)] = draw(real(*coupling))
    dim = draw(st.integers(1, 3)) if dimension is None else dimension
    return ParticleSystem(dim, tuple(masses), tuple(k), pairs)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
