import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from zinbiel.scalars import Poly, ratfunc

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")

VAR = "lam"

small_ints = st.integers(-6, 6)
rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


@st.composite
def polys(draw, max_degree=3):
    return Poly(draw(st.lists(rationals, max_size=max_degree + 1)), VAR)


@st.composite
def scalars(draw):
    """Rationals and rational functions in one parameter."""
    if draw(st.booleans()):
        return draw(rationals)
    num = draw(polys())
    den = draw(polys(max_degree=2))
    if den.is_zero():
        den = Poly((1,), VAR)
    return ratfunc(num, den)


@pytest.fixture
def rng():
    return random.Random(0)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
