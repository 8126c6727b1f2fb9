"""Exact condition numbers of companion matrices.

Builds Frobenius, Fiedler, unit lower Hessenberg, striped and perturbed
Frobenius companion forms of a monic polynomial with rational coefficients,
and computes kappa^2 = ||A||_F^2 ||A^{-1}||_F^2 both from closed forms and
by exact inversion.
"""

from .analyzer import AnalysisRequest, analyze, emit_report, parse_input, verify_suite
from .exact_linalg import (
    ConditionReport,
    LabeledMatrix,
    MonicPolynomial,
    char_poly,
    condition_report,
    equivalent,
    invert,
)
from .fiedler import fiedler_form, fiedler_product, initial_step_size, kappa_fiedler_sq
from .generalized import MSpec, build_M, dual_kappa, kappa_M_sq
from .hessenberg import build_frobenius, hessenberg_inverse, validate_unit_sparse
from .striped import StripeTuple, build_striped, kappa_striped_sq, stripe_dominance_check

__all__ = [
    "AnalysisRequest",
    "ConditionReport",
    "LabeledMatrix",
    "MSpec",
    "MonicPolynomial",
    "StripeTuple",
    "analyze",
    "build_M",
    "build_frobenius",
    "build_striped",
    "char_poly",
    "condition_report",
    "dual_kappa",
    "emit_report",
    "equivalent",
    "fiedler_form",
    "fiedler_product",
    "hessenberg_inverse",
    "initial_step_size",
    "invert",
    "kappa_M_sq",
    "kappa_fiedler_sq",
    "kappa_striped_sq",
    "parse_input",
    "stripe_dominance_check",
    "validate_unit_sparse",
    "verify_suite",
]
