from pathlib import Path

import hypothesis
import hypothesis.strategies as st
import numpy as np
import pytest

from hobo.polynomial import Polynomial, parse_text

hypothesis.settings.register_profile("default", deadline=None, max_examples=60)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=10)
hypothesis.settings.load_profile("default")

DATA = Path(__file__).parent / "data"

WORKED_TEXT = "-10 x0\n+7 x1\n+1 x0 x1\n-4 x0 x2\n+8 x1 x2\n-1 x0 x1 x2"

# values as printed in the worked example
WORKED_TENSOR = np.array([
    [[-10, 1, -4], [0, 0, -1], [0, 0, 0]],
    [[0, 0, 0], [0, 7, 8], [0, 0, 0]],
    [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
], dtype=float)


@pytest.fixture
def worked() -> Polynomial:
    return parse_text(WORKED_TEXT)


@st.composite
def raw_terms(draw, max_vars=6, max_degree=4, max_terms=10, integer=True):
    """``(n, [(vars, coef), ...])`` with repeated variables and duplicate terms allowed."""
    n = draw(st.integers(1, max_vars))
    var = st.integers(0, n - 1)
    coef = (st.integers(-10, 10) if integer
            else st.floats(-10, 10, allow_nan=False, allow_infinity=False))
    terms = draw(st.lists(
        st.tuples(st.lists(var, min_size=1, max_size=max_degree), coef),
        max_size=max_terms,
    ))
    return n, terms


@st.composite
def polynomials(draw, max_vars=6, max_degree=4, max_terms=10, integer=True, offset=True):
    n, terms = draw(raw_terms(max_vars, max_degree, max_terms, integer))
    off = draw(st.integers(-5, 5)) if offset else 0
    return Polynomial.from_terms(terms, num_vars=n, offset=off)


@st.composite
def poly_and_bits(draw, **kw):
    p = draw(polynomials(**kw))
    x = draw(st.lists(st.integers(0, 1), min_size=p.num_vars, max_size=p.num_vars))
    return p, x


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
