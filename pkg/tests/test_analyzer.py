import csv
import io
import json
from fractions import Fraction

import pytest
from hypothesis import given

from companion_kappa.analyzer import (
    AnalysisRequest,
    analyze,
    default_a_grid,
    emit_report,
    load_result_json,
    parse_ell_range,
    parse_input,
    perturbation_plotdata,
    verify_suite,
)
from companion_kappa.errors import DegreeTooSmallError, NoFeasibleFamilyError, ParseError
from companion_kappa.exact_linalg import MonicPolynomial
from companion_kappa.striped import rank_one_example

from conftest import DEGREE9, polynomials


def test_parse_inline():
    assert parse_input("5,4,3,2").coeffs == (5, 4, 3, 2)
    assert parse_input("0.5,1").coeffs == (Fraction(1, 2), 1)
    assert parse_input("1/3, -2/7").coeffs == (Fraction(1, 3), Fraction(-2, 7))


def test_parse_documents(tmp_path):
    doc = {"coeffs_ascending": ["1", "2", "3", "3", "8", "5", "2", "6", "8"]}
    assert parse_input(json.dumps(doc)) == DEGREE9
    desc = {"degree": 4, "order": "descending", "coeffs": ["2", "3", "4", "5"]}
    assert parse_input(json.dumps(desc)).coeffs == (5, 4, 3, 2)
    f = tmp_path / "p.csv"
    f.write_text("5\n4\n3/2\n0.25\n")
    assert parse_input(str(f)).coeffs == (5, 4, Fraction(3, 2), Fraction(1, 4))
    g = tmp_path / "p.json"
    g.write_text(json.dumps({"degree": 2, "coeffs": [1, "2"]}))
    assert parse_input(str(g)).coeffs == (1, 2)


@pytest.mark.parametrize("bad", ["", "1,x", "{not json", '{"coeffs": 3}', '{"degree": 3, "coeffs": ["1", "2"]}', '{"order": "sideways", "coeffs": ["1","2"]}'])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_input(bad)


def test_degree_too_small():
    with pytest.raises(DegreeTooSmallError):
        parse_input("3")


def test_ell_range():
    assert parse_ell_range("3..5") == [3, 4, 5]
    assert parse_ell_range("3,6") == [3, 6]
    with pytest.raises(ParseError):
        parse_ell_range("a..b")


def test_default_a_grid():
    assert default_a_grid(MonicPolynomial((1, 2, 3, 4, 5, 6)), 3) == [4, 0, 1, -1, 2, -2]
    assert default_a_grid(MonicPolynomial((1, 2, 3, 2, 5, 6)), 3) == [2, 0, 1, -1]


def test_degree9_recommendation():
    res = analyze(AnalysisRequest(DEGREE9, families=("fiedler", "striped")))
    rec = res.recommendation
    assert rec.best.family == "striped" and rec.best.params["stripes"] == [3, 3, 3]
    assert rec.kappa_sq == 14112
    assert all(rec.kappa_sq <= r.kappa_sq for r in rec.runners_up)
    fiedler = {r.kappa_sq for r in res.reports if r.family == "fiedler"}
    assert fiedler == {50176}


def test_x_n_plus_1_ties_to_frobenius():
    p = MonicPolynomial((1, 0, 0, 0, 0, 0))
    res = analyze(AnalysisRequest(p))
    live = [r for r in res.reports if not r.is_skipped and r.source == "oracle"]
    unit_sparse = {r.kappa_sq for r in live if r.family != "generalized" or r.params["a"] == "0"}
    assert unit_sparse == {36}
    # a nonzero perturbation moves entries off the unit sparse pattern
    assert all(r.kappa_sq > 36 for r in live if r.family == "generalized" and r.params["a"] != "0")
    assert res.recommendation.best.family == "frobenius"
    assert "tie" in res.recommendation.tie_break


def test_rank_one_striped_wins():
    p = rank_one_example(1, 2).polynomial()
    res = analyze(AnalysisRequest(p, families=("fiedler", "striped")))
    rec = res.recommendation
    assert rec.best.family == "striped"
    assert rec.best.params["stripes"] == [2, 2, 2]
    f1 = next(r for r in res.reports if r.family == "fiedler" and r.params["t"] == 1)
    assert f1.kappa_sq / rec.kappa_sq == Fraction(110, 30)


def test_skips_are_named():
    res = analyze(AnalysisRequest(MonicPolynomial((2, 1, 1, 1))))
    skipped = [r for r in res.reports if r.is_skipped]
    assert skipped and all(r.skipped_reason for r in skipped)
    assert any("c_0 = 1" in note for note in res.notices)
    res = analyze(AnalysisRequest(MonicPolynomial((1, 2, 3, 4, 5, 6)), ell_range=[2, 3]))
    assert any(r.is_skipped and "ell=2" in r.skipped_reason for r in res.reports)


def test_singular_everything_skipped():
    with pytest.raises(NoFeasibleFamilyError):
        analyze(AnalysisRequest(MonicPolynomial((0, 1, 2))))
    with pytest.raises(NoFeasibleFamilyError):
        analyze(AnalysisRequest(MonicPolynomial((1, 2, 3)), families=("generalized",)))


def test_request_validation():
    with pytest.raises(ValueError):
        AnalysisRequest(DEGREE9, families=())
    with pytest.raises(ParseError):
        AnalysisRequest(DEGREE9, families=("hexagonal",))


def test_generalized_reports_carry_both_sources():
    p = MonicPolynomial((1, 2, 3, 4, 5))
    res = analyze(AnalysisRequest(p, families=("generalized",), a_grid=[1]))
    by_source = {r.source: r for r in res.reports}
    assert by_source["oracle"].kappa_sq == 2544
    assert by_source["closed-form"].kappa_sq == 2592


@given(polynomials(2, 6))
def test_recommendation_minimal(p):
    res = analyze(AnalysisRequest(p))
    live = [r for r in res.reports if not r.is_skipped and r.source == "oracle"]
    assert all(res.recommendation.kappa_sq <= r.kappa_sq for r in live)
    for r in res.reports:
        if r.source == "closed-form" and r.family in ("frobenius", "fiedler", "striped"):
            twin = next(o for o in live if o.family == r.family and o.params == r.params)
            assert twin.kappa_sq == r.kappa_sq


def test_json_round_trip():
    res = analyze(AnalysisRequest(DEGREE9))
    text = emit_report(res, "json")
    p, reports, rec = load_result_json(text)
    assert p == DEGREE9
    assert [(r.family, r.params, r.source, r.kappa_sq, r.skipped_reason) for r in reports] == [
        (r.family, json.loads(json.dumps(r.params, default=str)), r.source, r.kappa_sq, r.skipped_reason) for r in res.reports
    ]
    assert Fraction(rec["kappa_sq"]) == 14112


def test_csv_rows():
    res = analyze(AnalysisRequest(MonicPolynomial((5, 4, 3, 2))))
    rows = list(csv.DictReader(io.StringIO(emit_report(res, "csv"))))
    assert len(rows) == len(res.reports)
    first = rows[0]
    assert first["kappa_sq"] == "1197/5"
    assert abs(float(first["kappa_float"]) - (1197 / 5) ** 0.5) < 1e-12


def test_table_and_plotdata():
    res = analyze(AnalysisRequest(MonicPolynomial((5, 4, 3, 2))))
    table = emit_report(res, "table")
    assert "recommended: frobenius" in table
    plot = emit_report(res, "plotdata").splitlines()
    assert plot[0].startswith("#") and len(plot) > 1
    with pytest.raises(ParseError):
        emit_report(res, "xml")


def test_perturbation_plotdata_trend():
    lines = perturbation_plotdata(7, 3).splitlines()[1:]
    over_t = [float(line.split()[2]) for line in lines]
    assert abs(over_t[-1] - 2 ** -0.5) < 1e-3
    assert abs(over_t[-1] - 2 ** -0.5) < abs(over_t[0] - 2 ** -0.5)


def test_output_deterministic():
    req = AnalysisRequest(DEGREE9)
    assert emit_report(analyze(req), "json") == emit_report(analyze(req), "json")


def test_verify_suite_small():
    a = verify_suite(seed=1, n_max=6, trials=15)
    b = verify_suite(seed=1, n_max=6, trials=15)
    assert a.passed, a.to_table()
    assert a.to_json() == b.to_json()
    probe = next(r for r in a.results if r.name.startswith("M(a,ell): published"))
    assert probe.checked >= 20 and "offset" in probe.detail


def test_verify_suite_reports_small_n_max():
    rep = verify_suite(seed=3, n_max=4, trials=5)
    assert rep.passed
    assert any(r.detail and r.detail.startswith("skipped") for r in rep.results)
