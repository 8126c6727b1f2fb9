"""
Fiedler companion matrices: factor products, lattice-path Hessenberg forms,
initial step size, and closed-form condition numbers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    HypothesisNotMetError,
    IndexOutOfRangeError,
    NotFiedlerError,
    ZeroConstantTermError,
)
from .exact_linalg import (
    ONE,
    ZERO,
    LabeledMatrix,
    MonicPolynomial,
    coef,
    condition_report,
    matmul,
)
from .hessenberg import HessenbergCompanion, from_placement

UP, RIGHT = "U", "R"


def generic_polynomial(n: int) -> MonicPolynomial:
    """Coefficients c_i = i-th odd prime, so every entry of a unit sparse
    product is unambiguously 0, 1 or a single -c_i."""
    return MonicPolynomial(tuple(_odd_primes(n)))


def _odd_primes(count: int) -> list[int]:
    out: list[int] = []
    k = 3
    while len(out) < count:
        if all(k % q for q in out if q * q <= k):
            out.append(k)
        k += 2
    return out


# ----------------------------------------------------------------------------
# factor products
# ----------------------------------------------------------------------------


def fiedler_factor(k: int, p: MonicPolynomial) -> LabeledMatrix:
    """F_0 = diag(1, ..., 1, -c_0); F_k = diag(I_{n-k-1}, T_k, I_{k-1}),
    T_k = [[-c_k, 1], [1, 0]]."""
    n = p.n
    if not 0 <= k <= n - 1:
        raise IndexOutOfRangeError(f"factor index {k} outside [0, {n - 1}]")
    vals = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    labs = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    if k == 0:
        vals[n - 1][n - 1] = -p.coeffs[0]
        labs[n - 1][n - 1] = coef(0)
        return LabeledMatrix(vals, labs)
    a = n - k - 1
    vals[a][a], labs[a][a] = -p.coeffs[k], coef(k)
    vals[a][a + 1] = vals[a + 1][a] = Fraction(1)
    labs[a][a + 1] = labs[a + 1][a] = ONE
    vals[a + 1][a + 1], labs[a + 1][a + 1] = Fraction(0), ZERO
    return LabeledMatrix(vals, labs)


def _product(sigma: Sequence[int], p: MonicPolynomial) -> LabeledMatrix:
    acc = fiedler_factor(sigma[0], p)
    for k in sigma[1:]:
        acc = matmul(acc, fiedler_factor(k, p))
    return acc


def fiedler_product(sigma: Sequence[int], p: MonicPolynomial) -> LabeledMatrix:
    """F_{sigma_0} F_{sigma_1} ... F_{sigma_{n-1}} with entry labels.

    Labels come from evaluating the product once at generic prime
    coefficients; the real-valued product is then checked against them.
    """
    n = p.n
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(n)):
        raise ValueError(f"{sigma} is not a permutation of 0..{n - 1}")
    g = generic_polynomial(n)
    code = {-c: k for k, c in enumerate(g.coeffs)}
    generic = _product(sigma, g)
    labs = []
    for row in generic.values:
        lr = []
        for v in row:
            if v == 0:
                lr.append(ZERO)
            elif v == 1:
                lr.append(ONE)
            elif v in code:
                lr.append(coef(code[v]))
            else:
                raise AssertionError(f"unexpected entry {v} in a Fiedler product")
        labs.append(lr)
    vals = [
        [Fraction(0) if l.kind == "zero" else Fraction(1) if l.kind == "one" else -p.coeffs[l.index] for l in row]
        for row in labs
    ]
    actual = _product(sigma, p)
    if [list(r) for r in actual.values] != vals:
        raise AssertionError("generic labels disagree with the instantiated product")
    return LabeledMatrix(vals, labs)


def all_permutations(n: int) -> Iterator[tuple[int, ...]]:
    return itertools.permutations(range(n))


# ----------------------------------------------------------------------------
# lattice paths
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticePath:
    """Moves from -c_0 (bottom-left of R) to -c_{n-1} (top-right of R)."""

    moves: tuple[str, ...]

    def __post_init__(self):
        mv = tuple(self.moves)
        if any(x not in (UP, RIGHT) for x in mv):
            raise ValueError("moves must be 'U' or 'R'")
        object.__setattr__(self, "moves", mv)

    @classmethod
    def parse(cls, s: str) -> "LatticePath":
        return cls(tuple(s.upper()))

    @property
    def n(self) -> int:
        return len(self.moves) + 1

    @property
    def m(self) -> int:
        return self.moves.count(RIGHT)

    @property
    def step_size(self) -> int:
        if not self.moves:
            raise ValueError("empty path")
        first = self.moves[0]
        t = 0
        while t < len(self.moves) and self.moves[t] == first:
            t += 1
        return t

    def positions(self) -> list[tuple[int, int]]:
        r, s = len(self.moves) - self.m, 0
        out = [(r, s)]
        for mv in self.moves:
            if mv == UP:
                r -= 1
            else:
                s += 1
            out.append((r, s))
        return out

    def __str__(self) -> str:
        return "".join(self.moves)


def all_lattice_paths(n: int) -> Iterator[LatticePath]:
    for moves in itertools.product((RIGHT, UP), repeat=n - 1):
        yield LatticePath(moves)


def path_with_step(n: int, t: int, first: str = RIGHT) -> LatticePath:
    """A path whose initial straight run has length t."""
    if not 1 <= t <= n - 1:
        raise ValueError(f"step size {t} outside [1, {n - 1}]")
    other = UP if first == RIGHT else RIGHT
    return LatticePath((first,) * t + (other,) * (n - 1 - t))


def lattice_to_hessenberg(path: LatticePath, p: MonicPolynomial) -> HessenbergCompanion:
    if path.n != p.n:
        raise ValueError(f"path has {len(path.moves)} moves; degree {p.n} needs {p.n - 1}")
    return from_placement(p, path.m, dict(enumerate(path.positions())))


def fiedler_form(p: MonicPolynomial, t: int) -> HessenbergCompanion:
    return lattice_to_hessenberg(path_with_step(p.n, t), p)


def is_fiedler_hessenberg(C: HessenbergCompanion) -> bool:
    """True iff each -c_{k+1} sits directly above or directly right of -c_k."""
    pos = {}
    for i, row in enumerate(C.matrix.labels):
        for j, lab in enumerate(row):
            if lab.kind == "coef":
                pos[lab.index] = (i, j)
    for k in range(C.n - 1):
        (i, j), nxt = pos[k], pos[k + 1]
        if nxt not in ((i - 1, j), (i, j + 1)):
            return False
    return True


def hessenberg_to_path(C: HessenbergCompanion) -> LatticePath:
    if not is_fiedler_hessenberg(C):
        raise NotFiedlerError("coefficients do not form a lattice path")
    pos = {}
    for i, row in enumerate(C.matrix.labels):
        for j, lab in enumerate(row):
            if lab.kind == "coef":
                pos[lab.index] = (i, j)
    return LatticePath(tuple(UP if pos[k + 1][0] < pos[k][0] else RIGHT for k in range(C.n - 1)))


# ----------------------------------------------------------------------------
# step size and condition numbers
# ----------------------------------------------------------------------------


def initial_step_size(M: LabeledMatrix | HessenbergCompanion) -> int:
    """Number of coefficients other than c_0 in the line holding both c_0 and c_1."""
    if isinstance(M, HessenbergCompanion):
        M = M.matrix
    pos = M.coef_positions()
    if len(pos.get(0, ())) != 1 or len(pos.get(1, ())) != 1:
        raise NotFiedlerError("c_0 and c_1 must each appear exactly once")
    (i0, j0), (i1, j1) = pos[0][0], pos[1][0]
    if i0 == i1:
        line = [M.labels[i0][j] for j in range(M.n)]
    elif j0 == j1:
        line = [M.labels[i][j0] for i in range(M.n)]
    else:
        raise NotFiedlerError("no row or column contains both c_0 and c_1")
    return sum(1 for lab in line if lab.kind == "coef" and lab.index != 0)


def _require_c0(p: MonicPolynomial):
    if p.coeffs[0] == 0:
        raise ZeroConstantTermError("c_0 = 0")


def unit_sparse_norm_sq(p: MonicPolynomial) -> Fraction:
    return (p.n - 1) + sum((c * c for c in p.coeffs), Fraction(0))


def fiedler_inv_norm_sq(p: MonicPolynomial, t: int) -> Fraction:
    _require_c0(p)
    n = p.n
    if not 1 <= t <= n - 1:
        raise ValueError(f"step size {t} outside [1, {n - 1}]")
    c = p.coeffs
    head = (1 + sum((c[i] ** 2 for i in range(1, t + 1)), Fraction(0))) / c[0] ** 2
    tail = sum((c[i] ** 2 for i in range(t + 1, n)), Fraction(0))
    return (n - 1) + head + tail


def kappa_fiedler_sq(p: MonicPolynomial, t: int) -> Fraction:
    return unit_sparse_norm_sq(p) * fiedler_inv_norm_sq(p, t)


@dataclass(frozen=True)
class KappaOrdering:
    values: tuple[tuple[int, Fraction], ...]
    regime: str  # "|c0|<1", "|c0|=1" or "|c0|>1"
    holds: bool

    @property
    def kappas(self) -> list[Fraction]:
        return [k for _, k in self.values]


def kappa_ordering(p: MonicPolynomial) -> KappaOrdering:
    """kappa^2 for every step size, with the monotonicity expected from |c_0|."""
    _require_c0(p)
    vals = tuple((t, kappa_fiedler_sq(p, t)) for t in range(1, p.n))
    ks = [k for _, k in vals]
    pairs = list(zip(ks, ks[1:]))
    a = abs(p.coeffs[0])
    if a < 1:
        regime, holds = "|c0|<1", all(x <= y for x, y in pairs)
    elif a == 1:
        regime, holds = "|c0|=1", all(x == y for x, y in pairs)
    else:
        regime, holds = "|c0|>1", all(x >= y for x, y in pairs)
    return KappaOrdering(vals, regime, holds)


@dataclass(frozen=True)
class RatioEntry:
    t: int
    kappa_f_sq: Fraction
    applies: bool  # kappa(F) <= kappa(C)
    ratio_sq: Fraction  # (kappa(C)/kappa(F))^2
    holds: bool | None  # None when kappa(F) > kappa(C)


@dataclass(frozen=True)
class RatioBoundReport:
    kappa_c_sq: Fraction
    zero_block: str  # "u" or "y"
    entries: tuple[RatioEntry, ...]

    @property
    def holds(self) -> bool:
        return all(e.holds for e in self.entries if e.applies)


def ratio_bound_check(C: HessenbergCompanion, p: MonicPolynomial | None = None) -> RatioBoundReport:
    """Check 1 <= kappa(C)/kappa(F) <= kappa(F) for every step size with
    kappa(F) <= kappa(C).  Pairs with kappa(F) > kappa(C) are reported, not judged."""
    p = p or C.p
    _require_c0(p)
    if C.u_is_zero():
        zb = "u"
    elif C.y_is_zero():
        zb = "y"
    else:
        raise HypothesisNotMetError("neither u nor y is the zero vector")
    kc = condition_report(C.matrix).kappa_sq
    entries = []
    for t in range(1, p.n):
        kf = kappa_fiedler_sq(p, t)
        applies = kf <= kc
        # kappa_C / kappa_F <= kappa_F  <=>  kappa_C^2 <= kappa_F^4
        holds = (kf <= kc and kc <= kf * kf) if applies else None
        entries.append(RatioEntry(t, kf, applies, kc / kf, holds))
    return RatioBoundReport(kc, zb, tuple(entries))


def inverse_entry_census(p: MonicPolynomial, t: int) -> dict[str, list[Fraction] | int]:
    """Expected nonzero entries of the inverse of a Fiedler matrix with step size t."""
    _require_c0(p)
    c = p.coeffs
    n = p.n
    return {
        "ones": n - 1,
        "scaled": sorted([-1 / c[0]] + [-c[i] / c[0] for i in range(1, t + 1)]),
        "plain": sorted(c[i] for i in range(t + 1, n)),
        "zeros": n * n - (n - 1) - n,
    }

