"""
The perturbed Frobenius family M_n(a, ell).

Starting from the first-column Frobenius form, ``a`` is added to -c_ell,
``a c_{n-1}`` to -c_{ell-1}, and ``-a`` is placed one row below and one
column right of -c_ell + a.  The characteristic polynomial is unchanged.

Two sources for kappa(M)^2 are kept side by side:

* ``"oracle"``: ||M||^2 ||M^{-1}||^2 from exact entries and exact inversion.
* ``"published"``: the published product formula
  (v + a^2 + (a-c_ell)^2 + (a c_{n-1} - c_{ell-1})^2)
  (v + a^2 + (a-c_ell)^2 + c_{ell-1}^2 + 1),
  v = n - c_{ell-1}^2 - c_ell^2 + sum_{i=1}^{n-1} c_i^2, valid for c_0 = 1.

The first factor is exactly ||M||^2.  The second factor exceeds the oracle
value of ||M^{-1}||^2 by exactly one; reports always show both.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadEllError, NonUnitConstantTermError, ZeroConstantTermError
from .exact_linalg import (
    ONE,
    ZERO,
    LabeledMatrix,
    MonicPolynomial,
    as_rational,
    char_poly,
    coef,
    condition_report,
    expr,
    frobenius_norm_sq,
    invert,
)
from .fiedler import kappa_fiedler_sq

PUBLISHED = "published"
ORACLE = "oracle"


@dataclass(frozen=True)
class MSpec:
    a: Fraction
    ell: int

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))

    def check(self, n: int):
        if not 3 <= self.ell <= n - 2:
            raise BadEllError(f"ell={self.ell} outside {{3..{n - 2}}} for n={n}")


def build_M(p: MonicPolynomial, spec: MSpec) -> LabeledMatrix:
    n, a, ell = p.n, spec.a, spec.ell
    spec.check(n)
    c = p.coeffs
    vals = [[Fraction(0)] * n for _ in range(n)]
    labs = [[ZERO] * n for _ in range(n)]
    for i in range(n - 1):
        vals[i][i + 1], labs[i][i + 1] = Fraction(1), ONE
    # first column, top to bottom: -c_{n-1}, ..., -c_0
    for i in range(n):
        k = n - 1 - i
        vals[i][0], labs[i][0] = -c[k], coef(k)
    r = n - ell - 1  # row of -c_ell
    if a != 0:
        vals[r][0], labs[r][0] = -c[ell] + a, expr("-c_ell + a")
        vals[r + 1][0], labs[r + 1][0] = -c[ell - 1] + a * c[n - 1], expr("-c_{ell-1} + a c_{n-1}")
        vals[r + 1][1], labs[r + 1][1] = -a, expr("-a")
    return LabeledMatrix(vals, labs)


def m_char_poly_check(p: MonicPolynomial, spec: MSpec) -> bool:
    return char_poly(build_M(p, spec)) == p


def m_inverse(p: MonicPolynomial, spec: MSpec) -> LabeledMatrix:
    """Block-formula inverse of M_n(a, ell).

    Row blocks 1 | n-ell-1 | 2 | ell-2, column blocks n-ell-1 | 2 | ell-2 | 1::

        (1/c_0) [ 0^T      0^T    0^T        -1                   ]
                [ c_0 I    O      O          (-c_{n-1}..-c_{ell+1}) ]
                [ -c_0 W   c_0 I  O          (-c_ell + a, -c_{ell-1}) ]
                [ O        O      c_0 I      (-c_{ell-2}..-c_1)     ]
    """
    n, a, ell = p.n, spec.a, spec.ell
    spec.check(n)
    c = p.coeffs
    c0 = c[0]
    if c0 == 0:
        raise ZeroConstantTermError("c_0 = 0")
    top = n - ell - 1
    out = [[Fraction(0)] * n for _ in range(n)]
    out[0][n - 1] = -1 / c0
    for i in range(top):
        out[1 + i][i] = Fraction(1)
        out[1 + i][n - 1] = -c[n - 1 - i] / c0
    r = 1 + top
    # -W: W holds a single -a in its (2,1) slot
    out[r + 1][0] = a
    out[r][top] = Fraction(1)
    out[r + 1][top + 1] = Fraction(1)
    out[r][n - 1] = (-c[ell] + a) / c0
    out[r + 1][n - 1] = -c[ell - 1] / c0
    for i in range(ell - 2):
        out[r + 2 + i][top + 2 + i] = Fraction(1)
        out[r + 2 + i][n - 1] = -c[ell - 2 - i] / c0
    return LabeledMatrix.unlabeled(out, "M inverse")


def _v(p: MonicPolynomial, ell: int) -> Fraction:
    c = p.coeffs
    return p.n - c[ell - 1] ** 2 - c[ell] ** 2 + sum((x * x for x in c[1:]), Fraction(0))


def published_factors(p: MonicPolynomial, spec: MSpec) -> tuple[Fraction, Fraction]:
    n, a, ell = p.n, spec.a, spec.ell
    spec.check(n)
    c = p.coeffs
    if c[0] != 1:
        raise NonUnitConstantTermError(f"c_0 = {c[0]}, the published formula needs c_0 = 1")
    v = _v(p, ell)
    first = v + a * a + (a - c[ell]) ** 2 + (a * c[n - 1] - c[ell - 1]) ** 2
    second = v + a * a + (a - c[ell]) ** 2 + c[ell - 1] ** 2 + 1
    return first, second


def oracle_factors(p: MonicPolynomial, spec: MSpec) -> tuple[Fraction, Fraction]:
    if p.coeffs[0] == 0:
        raise ZeroConstantTermError("c_0 = 0")
    M = build_M(p, spec)
    return frobenius_norm_sq(M), frobenius_norm_sq(invert(M))


def kappa_M_sq(p: MonicPolynomial, spec: MSpec, source: str = ORACLE) -> Fraction:
    if source == PUBLISHED:
        f, s = published_factors(p, spec)
    elif source == ORACLE:
        f, s = oracle_factors(p, spec)
    else:
        raise ValueError(f"unknown source {source!r}")
    return f * s


@dataclass(frozen=True)
class DualKappa:
    """kappa(M)^2 from both sources with the factor-wise differences."""

    oracle_norm_sq: Fraction
    oracle_inv_norm_sq: Fraction
    published_first: Fraction | None
    published_second: Fraction | None

    @property
    def oracle(self) -> Fraction:
        return self.oracle_norm_sq * self.oracle_inv_norm_sq

    @property
    def published(self) -> Fraction | None:
        return None if self.published_first is None else self.published_first * self.published_second

    @property
    def first_factor_agrees(self) -> bool | None:
        return None if self.published_first is None else self.published_first == self.oracle_norm_sq

    @property
    def second_factor_offset(self) -> Fraction | None:
        return None if self.published_second is None else self.published_second - self.oracle_inv_norm_sq


def dual_kappa(p: MonicPolynomial, spec: MSpec) -> DualKappa:
    f, s = oracle_factors(p, spec)
    pf = ps = None
    if p.coeffs[0] == 1:
        pf, ps = published_factors(p, spec)
    return DualKappa(f, s, pf, ps)


# ----------------------------------------------------------------------------
# the two improvement results
# ----------------------------------------------------------------------------


def perturbation_polynomial(n: int, ell: int, t) -> MonicPolynomial:
    """x^n + t x^{n-1} + t x^ell + t^2 x^{ell-1} + 1."""
    if not 3 <= ell <= n - 2:
        raise BadEllError(f"ell={ell} outside {{3..{n - 2}}} for n={n}")
    t = as_rational(t)
    c = [Fraction(0)] * n
    c[0] = Fraction(1)
    c[n - 1] += t
    c[ell] += t
    c[ell - 1] += t * t
    return MonicPolynomial(tuple(c))


@dataclass(frozen=True)
class PerturbationCase:
    n: int
    ell: int
    t: Fraction
    kappa_f_sq: Fraction
    kappa_m_sq_oracle: Fraction
    kappa_m_sq_published: Fraction
    ratio_sq_oracle: Fraction  # kappa(F)^2 / kappa(M)^2
    ratio_sq_published: Fraction

    @property
    def normalized_oracle(self) -> Fraction | None:
        """ratio^2 * 2 / t^2; tends to one as t grows."""
        return None if self.t == 0 else self.ratio_sq_oracle * 2 / (self.t * self.t)

    @property
    def normalized_published(self) -> Fraction | None:
        return None if self.t == 0 else self.ratio_sq_published * 2 / (self.t * self.t)


def perturbation_case(n: int, ell: int, t) -> PerturbationCase:
    t = as_rational(t)
    p = perturbation_polynomial(n, ell, t)
    spec = MSpec(t, ell)
    kf = kappa_fiedler_sq(p, 1)
    ko = kappa_M_sq(p, spec, ORACLE)
    kp = kappa_M_sq(p, spec, PUBLISHED)
    return PerturbationCase(n, ell, t, kf, ko, kp, kf / ko, kf / kp)


def perturbation_closed_form(n: int, t) -> Fraction:
    """The published value of kappa(M)^2 at a = t: (n + 2t^2)(n + 1 + 2t^2 + t^4)."""
    t = as_rational(t)
    return (n + 2 * t * t) * (n + 1 + 2 * t * t + t**4)


PERTURBATION_GRID = ((10, Fraction(1, 10)), (100, Fraction(1, 100)), (1000, Fraction(1, 1000)))


def perturbation_sweep(n: int, ell: int, grid=PERTURBATION_GRID):
    """(t, normalized oracle ratio, |normalized - 1|, ok) per grid point."""
    out = []
    for t, tol in grid:
        case = perturbation_case(n, ell, t)
        z = case.normalized_oracle
        out.append((case, z, abs(z - 1), abs(z - 1) <= tol))
    return out


@dataclass(frozen=True)
class ImprovementReport:
    hypothesis: bool  # (c_ell c_{n-1})^2 < 2 c_{ell-1} c_ell c_{n-1} - 1
    kappa_m_sq: Fraction  # oracle, a = c_ell
    kappa_f_sq: Fraction
    improves: bool  # kappa(M) < kappa(F), oracle
    margin: Fraction  # 2 c_{ell-1} c_ell c_{n-1} - (c_ell c_{n-1})^2

    @property
    def divergent(self) -> bool:
        """Hypothesis holds but the oracle comparison does not."""
        return self.hypothesis and not self.improves


def improvement_condition(p: MonicPolynomial, ell: int) -> ImprovementReport:
    c, n = p.coeffs, p.n
    if c[0] != 1:
        raise NonUnitConstantTermError(f"c_0 = {c[0]}, expected 1")
    spec = MSpec(c[ell], ell)
    spec.check(n)
    prod = c[ell] * c[n - 1]
    margin = 2 * c[ell - 1] * prod - prod * prod
    km = kappa_M_sq(p, spec, ORACLE)
    kf = kappa_fiedler_sq(p, 1)
    return ImprovementReport(margin > 1, km, kf, km < kf, margin)


def m_condition_report(p: MonicPolynomial, spec: MSpec):
    return condition_report(build_M(p, spec), "generalized", {"ell": spec.ell, "a": spec.a})
