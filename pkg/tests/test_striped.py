from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from companion_kappa.errors import BadShapeError, InvalidTupleError, NonUnitConstantTermError
from companion_kappa.exact_linalg import MonicPolynomial, char_poly, condition_report, from_pattern
from companion_kappa.fiedler import kappa_fiedler_sq, unit_sparse_norm_sq
from companion_kappa.hessenberg import validate_unit_sparse
from companion_kappa.striped import (
    StripeTuple,
    StructuredPolynomial,
    all_stripe_tuples,
    asymptote_sweep,
    build_striped,
    fiedler_striped_gap,
    kappa_striped_sq,
    rank_R,
    rank_one_example,
    stripe_dominance_check,
    striped_inv_norm_sq,
    structured_ratio,
)

import oracles
from conftest import DEGREE9, rationals

S7_322 = (
    (0, 1, 0, 0, 0, 0, 0),
    (0, 0, 1, 0, 0, 0, 0),
    ("c4", "c5", "c6", 1, 0, 0, 0),
    (0, 0, 0, 0, 1, 0, 0),
    ("c2", "c3", 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 1),
    ("c0", "c1", 0, 0, 0, 0, 0),
)

S8_332 = (
    (0, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 1, 0, 0, 0, 0, 0),
    ("c5", "c6", "c7", 1, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, 0, 0),
    ("c2", "c3", "c4", 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 1),
    ("c0", "c1", 0, 0, 0, 0, 0, 0),
)

S9_ROWS = [
    [0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 0],
    [-2, -6, -8, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 0],
    [-3, -8, -5, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1],
    [-1, -2, -3, 0, 0, 0, 0, 0, 0],
]


def test_tuple_validation():
    with pytest.raises(InvalidTupleError):
        StripeTuple((2, 3, 2))
    with pytest.raises(InvalidTupleError):
        StripeTuple((2, 0))
    with pytest.raises(InvalidTupleError):
        build_striped(MonicPolynomial((1, 2, 3)), (2, 2))


def test_tuple_counts():
    counts = [sum(1 for _ in all_stripe_tuples(n)) for n in range(1, 11)]
    assert counts == [1, 2, 3, 5, 8, 14, 24, 43, 77, 140]


def test_displayed_layouts():
    p7 = MonicPolynomial(tuple(range(11, 18)))
    assert build_striped(p7, (3, 2, 2)).matrix == from_pattern(p7, S7_322)
    p8 = MonicPolynomial(tuple(range(11, 19)))
    assert build_striped(p8, (3, 3, 2)).matrix == from_pattern(p8, S8_332)


def test_degree9_example(degree9):
    S = build_striped(degree9, (3, 3, 3))
    assert [list(r) for r in S.matrix.values] == S9_ROWS
    rep = condition_report(S.matrix)
    assert rep.norm_sq == 224 and rep.inv_norm_sq == 63 and rep.kappa_sq == 14112
    assert kappa_striped_sq(degree9, 3, 2) == 14112
    assert striped_inv_norm_sq(degree9, 3, 2) == 63
    assert kappa_fiedler_sq(degree9, 1) == 50176
    dom = stripe_dominance_check(degree9, 3, 2)
    assert dom.holds and dom.termwise
    assert rank_R(S) == 3


@pytest.mark.parametrize("n", range(2, 9))
def test_every_tuple_is_companion(n):
    p = MonicPolynomial(tuple(Fraction(2 * i - 5, i + 2) for i in range(n)))
    for t in all_stripe_tuples(n):
        S = build_striped(p, t)
        assert char_poly(S.matrix) == p
        assert validate_unit_sparse(S.matrix, p)


def test_hypotheses():
    with pytest.raises(BadShapeError):
        kappa_striped_sq(DEGREE9, 2, 2)
    with pytest.raises(NonUnitConstantTermError):
        kappa_striped_sq(MonicPolynomial((2, 1, 1, 1)), 2, 1)


def test_x_n_plus_1():
    for k, m in [(1, 3), (2, 1), (2, 2), (3, 1), (4, 1)]:
        n = k * (m + 1)
        p = MonicPolynomial((1,) + (0,) * (n - 1))
        assert kappa_striped_sq(p, k, m) == n * n
        assert rank_R(build_striped(p, (k,) * (m + 1))) == 1


def test_dominance_failure_example():
    rep = stripe_dominance_check(MonicPolynomial((1, 2, 2, 1)), 2, 1)
    assert not rep.holds
    assert rep.terms[0][2:4] == (9, 1)


def test_single_width_stripes_match_fiedler():
    p = MonicPolynomial((1, 3, -2, 5, Fraction(1, 2)))
    assert kappa_striped_sq(p, 1, 4) == kappa_fiedler_sq(p, 1)


def test_rank_one_example():
    sp = rank_one_example(1, 2)
    p = sp.polynomial()
    assert p.coeffs == (1, 2, 2, 4, 4, 8)
    S = build_striped(p, (2, 2, 2))
    assert rank_R(S) == 1
    assert striped_inv_norm_sq(p, 2, 2) == 30
    r = structured_ratio(sp)
    assert r.ratio_sq == r.ratio_sq_closed_forms == Fraction(110, 30)
    rep = stripe_dominance_check(p, 2, 2)
    assert rep.holds and rep.lhs == 0


def test_rank_one_ratio_approaches_scale():
    r = structured_ratio(rank_one_example(1, 10))
    ratio = float(r.ratio_sq) ** 0.5
    assert abs(ratio - 10) / 10 < 0.05


def test_structured_zero_a():
    sp = StructuredPolynomial(2, 2, (0,), (3, 4))
    assert structured_ratio(sp).ratio_sq == 1


def test_asymptotes():
    sp = StructuredPolynomial(3, 2, (1, 2), (Fraction(1, 2), 1))
    for *_, ok in asymptote_sweep(sp, "b"):
        assert ok
    for *_, ok in asymptote_sweep(sp, "a"):
        assert ok


@st.composite
def equal_stripe_case(draw, max_n=10, integer=False):
    k = draw(st.integers(1, 5))
    m = draw(st.integers(1, max(1, max_n // k - 1)))
    n = k * (m + 1)
    coef = st.integers(-6, 6).map(Fraction) if integer else rationals()
    cs = [Fraction(1)] + draw(st.lists(coef, min_size=n - 1, max_size=n - 1))
    return MonicPolynomial(tuple(cs)), k, m


@given(equal_stripe_case())
def test_closed_form_equals_oracle(case):
    p, k, m = case
    S = build_striped(p, (k,) * (m + 1))
    assert condition_report(S.matrix).kappa_sq == kappa_striped_sq(p, k, m)


@given(equal_stripe_case(max_n=6))
def test_closed_form_equals_cramer_oracle(case):
    p, k, m = case
    S = build_striped(p, (k,) * (m + 1))
    assert oracles.kappa_sq([list(r) for r in S.matrix.values]) == kappa_striped_sq(p, k, m)


@given(st.one_of(equal_stripe_case(), equal_stripe_case(integer=True)))
def test_dominance_iff(case):
    p, k, m = case
    rep = stripe_dominance_check(p, k, m)
    ks = kappa_striped_sq(p, k, m)
    assert rep.holds == all(ks <= kappa_fiedler_sq(p, t) for t in range(1, p.n))
    assert rep.holds == (fiedler_striped_gap(p, k, m) >= 0)
    if rep.termwise:
        assert rep.holds


@given(st.integers(1, 4), st.integers(1, 3), st.data())
def test_rank_one_implies_dominance(k, m, data):
    a = data.draw(st.lists(rationals(), min_size=k - 1, max_size=k - 1))
    b = data.draw(st.lists(rationals(), min_size=m, max_size=m))
    sp = StructuredPolynomial(k, m, tuple(a), tuple(b))
    p = sp.polynomial()
    S = build_striped(p, (k,) * (m + 1))
    assert rank_R(S) <= 1
    assert stripe_dominance_check(p, k, m).holds
    r = structured_ratio(sp)
    assert r.ratio_sq == r.ratio_sq_closed_forms
    assert unit_sparse_norm_sq(p) == condition_report(S.matrix).norm_sq
