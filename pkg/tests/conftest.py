import numpy as np
import pytest
from hypothesis import strategies as st

from lquprotect.linalg import random_unitary
from lquprotect.states import random_density_matrix


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


seeds = st.integers(min_value=0, max_value=2**32 - 1)


def state_from_seed(seed, dim_a=2, dim_b=2, rank=None):
    return random_density_matrix(dim_a, dim_b, np.random.default_rng(seed), rank)


def unitary_from_seed(seed, d):
    return random_unitary(d, np.random.default_rng(seed))


_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Record one acceptance line; the lines are printed in the terminal summary."""
    def record(label, ok, detail=""):
        _ACCEPTANCE.append(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())
        print(_ACCEPTANCE[-1])
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
