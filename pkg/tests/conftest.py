import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from companion_kappa.exact_linalg import MonicPolynomial, from_pattern

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def rationals(size=9, max_den=5):
    return st.builds(Fraction, st.integers(-size, size), st.integers(1, max_den))


def nonzero_rationals(size=9, max_den=5):
    return rationals(size, max_den).filter(lambda q: q != 0)


@st.composite
def polynomials(draw, min_n=2, max_n=7, c0=None, nonzero_c0=True):
    n = draw(st.integers(min_n, max_n))
    cs = draw(st.lists(rationals(), min_size=n, max_size=n))
    if c0 is not None:
        cs[0] = Fraction(c0)
    elif nonzero_c0:
        cs[0] = draw(nonzero_rationals())
    return MonicPolynomial(tuple(cs))


# the 4x4 matrices used throughout the worked examples, as layouts

UNIT_SPARSE_4 = (
    ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), ("c0", "c1", "c2", "c3")),
    ((0, 1, 0, 0), (0, "c3", 1, 0), (0, "c2", 0, 1), ("c0", "c1", 0, 0)),
    ((0, 1, 0, 0), ("c2", "c3", 1, 0), (0, 0, 0, 1), ("c0", "c1", 0, 0)),
)

FROBENIUS_LIKE_4 = (
    (("c3", 1, 0, 0), ("c2", 0, 1, 0), ("c1", 0, 0, 1), ("c0", 0, 0, 0)),
    (("c3", "c2", "c1", "c0"), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)),
    ((0, 0, 0, "c0"), (1, 0, 0, "c1"), (0, 1, 0, "c2"), (0, 0, 1, "c3")),
)

WORKED = MonicPolynomial((5, 4, 3, 2))
DEGREE9 = MonicPolynomial((1, 2, 3, 3, 8, 5, 2, 6, 8))


@pytest.fixture
def worked():
    return WORKED


@pytest.fixture
def degree9():
    return DEGREE9


def instantiate(layouts, p):
    return [from_pattern(p, lay) for lay in layouts]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
