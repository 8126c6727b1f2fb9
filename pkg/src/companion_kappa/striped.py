"""
Striped companion matrices S_n(t_1, ..., t_r).

The coefficients form horizontal stripes inside R.  Stripes are laid out
bottom-up: the last stripe holds -c_0..-c_{t_r - 1} in the bottom row of R,
each stripe i > 1 is followed (going up) by t_i - 1 zero rows, and the first
stripe ends in the top row of R.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import BadShapeError, InvalidTupleError, NonUnitConstantTermError
from .exact_linalg import MonicPolynomial, as_rational, rank
from .fiedler import fiedler_inv_norm_sq, kappa_fiedler_sq, unit_sparse_norm_sq
from .hessenberg import HessenbergCompanion, from_placement


@dataclass(frozen=True)
class StripeTuple:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if not parts or any(x < 1 for x in parts):
            raise InvalidTupleError(f"stripe lengths must be positive: {parts}")
        if any(x > parts[0] for x in parts[1:]):
            raise InvalidTupleError(f"first stripe must be the longest: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def is_equal(self) -> bool:
        return len(set(self.parts)) == 1

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def all_stripe_tuples(n: int) -> Iterator[StripeTuple]:
    """Every ordered tuple summing to n whose first entry is maximal."""

    def rest(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for x in range(1, min(cap, remaining) + 1):
            for tail in rest(remaining - x, cap):
                yield (x,) + tail

    for t1 in range(n, 0, -1):
        for tail in rest(n - t1, t1):
            yield StripeTuple((t1,) + tail)


def build_striped(p: MonicPolynomial, t: StripeTuple | Sequence[int]) -> HessenbergCompanion:
    if not isinstance(t, StripeTuple):
        t = StripeTuple(tuple(t))
    n = p.n
    if t.n != n:
        raise InvalidTupleError(f"stripe lengths {t} sum to {t.n}, degree is {n}")
    m = t.parts[0] - 1
    rows = n - m  # rows of R
    placement: dict[int, tuple[int, int]] = {}
    row = rows - 1
    k = 0
    for i in range(len(t.parts) - 1, -1, -1):
        ti = t.parts[i]
        for s in range(ti):
            placement[k] = (row, s)
            k += 1
        row -= ti if i > 0 else 1
    assert row == -1, "stripe rows do not fill R"
    return from_placement(p, m, placement)


def equal_stripes(k: int, m: int) -> StripeTuple:
    return StripeTuple((k,) * (m + 1))


def _check_equal_stripe_hypotheses(p: MonicPolynomial, k: int, m: int):
    if k < 1 or m < 1 or p.n != k * (m + 1):
        raise BadShapeError(f"degree {p.n} is not k(m+1) with k={k}, m={m}")
    if p.coeffs[0] != 1:
        raise NonUnitConstantTermError(f"c_0 = {p.coeffs[0]}, expected 1")


def cross_terms(p: MonicPolynomial, k: int, m: int) -> list[tuple[int, int, Fraction, Fraction]]:
    """(j, i, |c_i c_{jk} - c_{jk+i}|^2, |c_{jk+i}|^2) for 1<=j<=m, 1<=i<=k-1."""
    c = p.coeffs
    return [
        (j, i, (c[i] * c[j * k] - c[j * k + i]) ** 2, c[j * k + i] ** 2)
        for j in range(1, m + 1)
        for i in range(1, k)
    ]


def striped_inv_norm_sq(p: MonicPolynomial, k: int, m: int) -> Fraction:
    _check_equal_stripe_hypotheses(p, k, m)
    c = p.coeffs
    total = Fraction(p.n)
    total += sum((c[j] ** 2 for j in range(1, k)), Fraction(0))
    total += sum((c[j * k] ** 2 for j in range(1, m + 1)), Fraction(0))
    total += sum((x for _, _, x, _ in cross_terms(p, k, m)), Fraction(0))
    return total


def kappa_striped_sq(p: MonicPolynomial, k: int, m: int) -> Fraction:
    """kappa(S_n(k, ..., k))^2 for c_0 = 1."""
    return unit_sparse_norm_sq(p) * striped_inv_norm_sq(p, k, m)


@dataclass(frozen=True)
class DominanceReport:
    holds: bool  # kappa(S) <= kappa(F) for every Fiedler F
    lhs: Fraction
    rhs: Fraction
    terms: tuple[tuple[int, int, Fraction, Fraction, bool], ...]

    @property
    def termwise(self) -> bool:
        """The per-term sufficient condition."""
        return all(ok for *_, ok in self.terms)


def stripe_dominance_check(p: MonicPolynomial, k: int, m: int) -> DominanceReport:
    _check_equal_stripe_hypotheses(p, k, m)
    terms = tuple((j, i, x, y, x <= y) for j, i, x, y in cross_terms(p, k, m))
    lhs = sum((t[2] for t in terms), Fraction(0))
    rhs = sum((t[3] for t in terms), Fraction(0))
    return DominanceReport(lhs <= rhs, lhs, rhs, terms)


def rank_R(S: HessenbergCompanion) -> int:
    return rank(S.R)


# ----------------------------------------------------------------------------
# structured polynomials q(x)(1 + b_1 x^k + ... + b_m x^{mk}) + x^{(m+1)k}
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class StructuredPolynomial:
    k: int
    m: int
    a: tuple[Fraction, ...]  # a_1..a_{k-1}
    b: tuple[Fraction, ...]  # b_1..b_m

    def __post_init__(self):
        a = tuple(as_rational(x) for x in self.a)
        b = tuple(as_rational(x) for x in self.b)
        if self.k < 1 or self.m < 1:
            raise BadShapeError("k and m must be positive")
        if len(a) != self.k - 1 or len(b) != self.m:
            raise BadShapeError(f"need {self.k - 1} a-values and {self.m} b-values")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return self.k * (self.m + 1)

    def polynomial(self) -> MonicPolynomial:
        q = (Fraction(1),) + self.a
        bb = (Fraction(1),) + self.b
        c = [Fraction(0)] * self.n
        for j, bj in enumerate(bb):
            for i, ai in enumerate(q):
                c[j * self.k + i] += bj * ai
        return MonicPolynomial(tuple(c))

    @property
    def sum_a_sq(self) -> Fraction:
        return sum((x * x for x in self.a), Fraction(0))

    @property
    def sum_b_sq(self) -> Fraction:
        return sum((x * x for x in self.b), Fraction(0))

    def scaled(self, a_scale=1, b_scale=1) -> "StructuredPolynomial":
        a_scale, b_scale = as_rational(a_scale), as_rational(b_scale)
        return StructuredPolynomial(self.k, self.m, tuple(x * a_scale for x in self.a), tuple(x * b_scale for x in self.b))


def rank_one_example(b, scale) -> StructuredPolynomial:
    """x^6 + b s^3 x^5 + b s^2 x^4 + b s^2 x^3 + b s x^2 + s x + 1 written as
    q(x)(1 + (bs) x^2 + (bs^2) x^4) + x^6 with q(x) = 1 + s x."""
    b, s = as_rational(b), as_rational(scale)
    return StructuredPolynomial(2, 2, (s,), (b * s, b * s * s))


@dataclass(frozen=True)
class StructuredRatio:
    ratio_sq: Fraction  # (kappa(F)/kappa(S))^2 from the quotient formula
    ratio_sq_closed_forms: Fraction  # same ratio from the two kappa closed forms
    asymptote_a: Fraction  # 1 + sum a^2, reached as sum b^2 grows
    asymptote_b: Fraction  # 1 + sum b^2, reached as sum a^2 grows
    rel_err_a: Fraction
    rel_err_b: Fraction


def structured_ratio(sp: StructuredPolynomial) -> StructuredRatio:
    A, B, n = sp.sum_a_sq, sp.sum_b_sq, sp.n
    ratio = ((1 + B) * A + B + n) / (A + B + n)
    p = sp.polynomial()
    via_kappa = kappa_fiedler_sq(p, 1) / kappa_striped_sq(p, sp.k, sp.m)
    asy_a, asy_b = 1 + A, 1 + B
    return StructuredRatio(
        ratio,
        via_kappa,
        asy_a,
        asy_b,
        abs(ratio - asy_a) / asy_a,
        abs(ratio - asy_b) / asy_b,
    )


ASYMPTOTE_GRID = ((10, Fraction(1, 10)), (100, Fraction(1, 100)), (1000, Fraction(1, 1000)))


def asymptote_sweep(sp: StructuredPolynomial, grow: str = "b", grid=ASYMPTOTE_GRID):
    """Scale the a- or b-vector by each magnitude and compare the exact ratio
    with the matching limit.  Returns (magnitude, ratio_sq, limit, rel_err, ok)."""
    out = []
    for mag, tol in grid:
        if grow == "b":
            r = structured_ratio(sp.scaled(b_scale=mag))
            limit, err = r.asymptote_a, r.rel_err_a
        elif grow == "a":
            r = structured_ratio(sp.scaled(a_scale=mag))
            limit, err = r.asymptote_b, r.rel_err_b
        else:
            raise ValueError("grow must be 'a' or 'b'")
        out.append((mag, r.ratio_sq, limit, err, err <= tol))
    return out


def fiedler_striped_gap(p: MonicPolynomial, k: int, m: int) -> Fraction:
    """||F^{-1}||^2 - ||S^{-1}||^2; nonnegative exactly when striping wins."""
    return fiedler_inv_norm_sq(p, 1) - striped_inv_norm_sq(p, k, m)
