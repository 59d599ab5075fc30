from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from primset import BoolMatrix, MatrixSet, PartialAutomaton

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = Path(__file__).resolve().parent.parent / "data"

FIG1 = [
    [[0, 1, 0], [0, 1, 1], [0, 0, 1]],
    [[0, 0, 0], [0, 1, 1], [1, 1, 0]],
]


@pytest.fixture
def fig1() -> MatrixSet:
    return MatrixSet.from_lists(FIG1)


@pytest.fixture
def data_dir() -> Path:
    return DATA


def wielandt(n: int) -> BoolMatrix:
    """n-cycle 0 -> 1 -> ... -> n-1 -> 0 plus the chord n-1 -> 1."""
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][(i + 1) % n] = 1
    rows[n - 1][1] = 1
    return BoolMatrix.from_lists(rows)


@st.composite
def matrices(draw, n=None, min_n=1, max_n=5):
    n = n if n is not None else draw(st.integers(min_n, max_n))
    return draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=n, max_size=n))


@st.composite
def matrix_sets(draw, min_n=1, max_n=4, max_k=3):
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(1, max_k))
    return MatrixSet.from_lists([draw(matrices(n=n)) for _ in range(k)])


@st.composite
def automata(draw, min_n=1, max_n=5, max_k=3, partial=False):
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(1, max_k))
    target = st.integers(0, n - 1)
    if partial:
        target = st.one_of(st.none(), target)
    letters = [tuple(draw(target) for _ in range(n)) for _ in range(k)]
    return PartialAutomaton(n, tuple(letters))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, f"rep_{rep.when}", rep)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
