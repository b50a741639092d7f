import numpy as np
import pytest
from hypothesis import strategies as st

from mmes.core import state_from_amplitudes

ACCEPTANCE_LINES: list[str] = []


def random_state(rng: np.random.Generator, n: int):
    raw = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return state_from_amplitudes(n, raw, normalize=True)


@st.composite
def pure_states(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_state(np.random.default_rng(seed), n)


@pytest.fixture
def rng():
    return np.random.default_rng(20100101)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and (rep.when == "call" or rep.failed):
        if rep.when == "call" or (rep.when == "setup" and rep.failed):
            doc = (item.obj.__doc__ or item.name).strip().splitlines()[0]
            details = ", ".join(f"{k}={v}" for k, v in item.user_properties)
            status = "PASS" if rep.passed else "FAIL"
            ACCEPTANCE_LINES.append(f"{status} {doc}" + (f" [{details}]" if details else ""))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
