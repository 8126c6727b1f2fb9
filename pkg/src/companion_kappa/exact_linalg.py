"""
Exact rational linear algebra used by every companion-matrix family.

All arithmetic is done with :class:`fractions.Fraction`; floats only appear
when a report is rendered for humans.  Matrices carry a structural label per
entry so that the position of each polynomial coefficient survives numeric
coincidences such as ``c_1 == c_2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .errors import DimensionTooLargeError, SingularMatrixError

Rational = Fraction

DEFAULT_EQUIVALENCE_CAP = 8


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        # floats are exact binary rationals; go through repr to keep 0.1 == 1/10
        return Fraction(repr(x))
    return Fraction(x)


# ----------------------------------------------------------------------------
# polynomials and labels
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class MonicPolynomial:
    """x^n + c_{n-1} x^{n-1} + ... + c_0, stored ascending as (c_0, ..., c_{n-1}).

    The leading 1 is implicit.  Builders of companion matrices require
    ``n >= 2``; degree one is allowed here only so that ``char_poly`` is
    total on square matrices.
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(as_rational(c) for c in self.coeffs)
        if len(cs) < 1:
            raise ValueError("a monic polynomial needs degree >= 1")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_roots(cls, roots: Iterable) -> "MonicPolynomial":
        poly = [Fraction(1)]  # ascending, including the leading 1
        for r in roots:
            r = as_rational(r)
            nxt = [Fraction(0)] * (len(poly) + 1)
            for i, a in enumerate(poly):
                nxt[i + 1] += a
                nxt[i] -= r * a
            poly = nxt
        return cls(tuple(poly[:-1]))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def evaluate(self, x) -> Fraction:
        x = as_rational(x)
        acc = Fraction(1)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        terms = [f"x^{self.n}"]
        for i in range(self.n - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if (mag == 1 and mono) else str(mag)
            terms.append(f"{sign} {coef}{mono}")
        return " ".join(terms)


@dataclass(frozen=True)
class Label:
    """Structural tag of a matrix entry: zero, one, coef (``-c_index``) or expr."""

    kind: str
    index: int | None = None
    desc: str = ""

    def __post_init__(self):
        if self.kind not in ("zero", "one", "coef", "expr"):
            raise ValueError(f"unknown label kind {self.kind!r}")
        if (self.kind == "coef") != (self.index is not None):
            raise ValueError("coef labels (and only those) carry an index")

    def __repr__(self) -> str:
        if self.kind == "coef":
            return f"Coef({self.index})"
        if self.kind == "expr":
            return f"Expr({self.desc!r})" if self.desc else "Expr"
        return self.kind.capitalize()


ZERO = Label("zero")
ONE = Label("one")


def coef(i: int) -> Label:
    return Label("coef", i)


def expr(desc: str = "") -> Label:
    return Label("expr", desc=desc)


# ----------------------------------------------------------------------------
# labeled matrices
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class LabeledMatrix:
    """Square exact matrix with a structural label per entry."""

    values: tuple[tuple[Fraction, ...], ...]
    labels: tuple[tuple[Label, ...], ...]

    def __post_init__(self):
        vals = tuple(tuple(as_rational(v) for v in row) for row in self.values)
        labs = tuple(tuple(row) for row in self.labels)
        n = len(vals)
        if any(len(row) != n for row in vals):
            raise ValueError("matrix must be square")
        if len(labs) != n or any(len(row) != n for row in labs):
            raise ValueError("label grid does not match value grid")
        for i in range(n):
            for j in range(n):
                lab, v = labs[i][j], vals[i][j]
                if lab.kind == "zero" and v != 0:
                    raise ValueError(f"entry ({i},{j}) labeled Zero holds {v}")
                if lab.kind == "one" and v != 1:
                    raise ValueError(f"entry ({i},{j}) labeled One holds {v}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "labels", labs)

    @classmethod
    def unlabeled(cls, rows: Sequence[Sequence], desc: str = "") -> "LabeledMatrix":
        """Wrap raw values; every entry gets an ``Expr`` label."""
        rows = [list(r) for r in rows]
        lab = expr(desc)
        return cls(rows, [[lab] * len(r) for r in rows])

    @classmethod
    def identity(cls, n: int) -> "LabeledMatrix":
        vals = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        labs = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        return cls(vals, labs)

    @classmethod
    def zeros(cls, n: int) -> "LabeledMatrix":
        return cls([[0] * n for _ in range(n)], [[ZERO] * n for _ in range(n)])

    @property
    def n(self) -> int:
        return len(self.values)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.values[i][j]

    def label(self, i: int, j: int) -> Label:
        return self.labels[i][j]

    def transpose(self) -> "LabeledMatrix":
        n = self.n
        return LabeledMatrix(
            [[self.values[j][i] for j in range(n)] for i in range(n)],
            [[self.labels[j][i] for j in range(n)] for i in range(n)],
        )

    def permuted(self, perm: Sequence[int]) -> "LabeledMatrix":
        """P M P^T where row ``i`` of the result is row ``perm[i]`` of M."""
        n = self.n
        if sorted(perm) != list(range(n)):
            raise ValueError("not a permutation")
        return LabeledMatrix(
            [[self.values[perm[i]][perm[j]] for j in range(n)] for i in range(n)],
            [[self.labels[perm[i]][perm[j]] for j in range(n)] for i in range(n)],
        )

    def positions(self, kind: str, index: int | None = None) -> list[tuple[int, int]]:
        n = self.n
        return [
            (i, j)
            for i in range(n)
            for j in range(n)
            if self.labels[i][j].kind == kind
            and (index is None or self.labels[i][j].index == index)
        ]

    def coef_positions(self) -> dict[int, list[tuple[int, int]]]:
        out: dict[int, list[tuple[int, int]]] = {}
        for i, row in enumerate(self.labels):
            for j, lab in enumerate(row):
                if lab.kind == "coef":
                    out.setdefault(lab.index, []).append((i, j))
        return out

    def as_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.values]

    def __matmul__(self, other: "LabeledMatrix") -> "LabeledMatrix":
        return matmul(self, other)

    def __str__(self) -> str:
        cells = [[str(v) for v in row] for row in self.values]
        w = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(" ".join(c.rjust(w) for c in row) for row in cells)


def matmul(A: LabeledMatrix, B: LabeledMatrix, desc: str = "product") -> LabeledMatrix:
    n = A.n
    if B.n != n:
        raise ValueError("dimension mismatch")
    Bt = list(zip(*B.values))
    rows = [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A.values]
    return LabeledMatrix.unlabeled(rows, desc)


def is_identity(M: LabeledMatrix) -> bool:
    n = M.n
    return all(M.values[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


# ----------------------------------------------------------------------------
# core operations
# ----------------------------------------------------------------------------


def char_poly(M: LabeledMatrix) -> MonicPolynomial:
    """Coefficients of det(xI - M), ascending, leading 1 dropped.

    Faddeev-LeVerrier recursion; every division is by an integer so the
    result is exact over the rationals.
    """
    A = [list(r) for r in M.values]
    n = len(A)
    if n == 0:
        raise ValueError("empty matrix")
    # c[k] is the coefficient of x^k
    c = [Fraction(0)] * (n + 1)
    c[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk <- A Mk + c[n-k+1] I
        prod = [[sum((A[i][l] * Mk[l][j] for l in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += c[n - k + 1]
        Mk = prod
        tr = sum((A[i][l] * Mk[l][i] for i in range(n) for l in range(n)), Fraction(0))
        c[n - k] = -tr / k
    return MonicPolynomial(tuple(c[:n]))


def _gauss_jordan(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    pivots = []
    r = 0
    nrows = len(rows)
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def invert(M: LabeledMatrix) -> LabeledMatrix:
    n = M.n
    aug = [list(M.values[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    aug, pivots = _gauss_jordan(aug, n)
    if len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return LabeledMatrix.unlabeled([row[n:] for row in aug], "inverse")


def rank(rows: Sequence[Sequence]) -> int:
    rows = [[as_rational(x) for x in r] for r in rows]
    if not rows:
        return 0
    _, pivots = _gauss_jordan(rows, len(rows[0]))
    return len(pivots)


def frobenius_norm_sq(M: LabeledMatrix) -> Fraction:
    return sum((v * v for row in M.values for v in row), Fraction(0))


# ----------------------------------------------------------------------------
# equivalence: permutation similarity and/or transposition
# ----------------------------------------------------------------------------


def _signature(values, i: int):
    n = len(values)
    row = sorted(values[i][j] for j in range(n) if j != i)
    col = sorted(values[j][i] for j in range(n) if j != i)
    return values[i][i], tuple(row), tuple(col)


def find_similarity(A: LabeledMatrix, B: LabeledMatrix) -> list[int] | None:
    """Permutation ``perm`` with ``A == B.permuted(perm)``, or None."""
    n = A.n
    if B.n != n:
        return None
    a, b = A.values, B.values
    sig_b: dict = {}
    for k in range(n):
        sig_b.setdefault(_signature(b, k), []).append(k)
    cands = []
    for i in range(n):
        ks = sig_b.get(_signature(a, i))
        if not ks:
            return None
        cands.append(ks)
    order = sorted(range(n), key=lambda i: len(cands[i]))
    perm = [-1] * n
    used = [False] * n

    def extend(depth: int) -> bool:
        if depth == n:
            return True
        i = order[depth]
        for k in cands[i]:
            if used[k]:
                continue
            ok = True
            for d in range(depth):
                j = order[d]
                pj = perm[j]
                if a[i][j] != b[k][pj] or a[j][i] != b[pj][k]:
                    ok = False
                    break
            if not ok:
                continue
            perm[i] = k
            used[k] = True
            if extend(depth + 1):
                return True
            used[k] = False
        perm[i] = -1
        return False

    return list(perm) if extend(0) else None


def equivalence_witness(
    A: LabeledMatrix, B: LabeledMatrix, max_dim: int = DEFAULT_EQUIVALENCE_CAP
) -> tuple[list[int], bool] | None:
    """Return ``(perm, transposed)`` with A = P B P^T (or A = P B^T P^T)."""
    if A.n != B.n:
        return None
    if A.n > max_dim:
        raise DimensionTooLargeError(f"dimension {A.n} exceeds equivalence cap {max_dim}")
    perm = find_similarity(A, B)
    if perm is not None:
        return perm, False
    perm = find_similarity(A, B.transpose())
    if perm is not None:
        return perm, True
    return None


def equivalent(A: LabeledMatrix, B: LabeledMatrix, max_dim: int = DEFAULT_EQUIVALENCE_CAP) -> bool:
    return equivalence_witness(A, B, max_dim) is not None


# ----------------------------------------------------------------------------
# condition reports
# ----------------------------------------------------------------------------

CLOSED_FORM = "closed-form"
ORACLE = "oracle"


def sqrt_float(q: Fraction) -> float:
    """Correctly scaled float square root of a nonnegative rational."""
    if q < 0:
        raise ValueError("negative input")
    if q == 0:
        return 0.0
    # 2^-120 relative precision before the final rounding to double
    num, den = q.numerator, q.denominator
    shift = 240
    root = math.isqrt((num << shift) // den)
    return root / (1 << (shift // 2))


@dataclass(frozen=True)
class ConditionReport:
    family: str
    params: Mapping[str, Any] = field(default_factory=dict)
    norm_sq: Fraction | None = None
    inv_norm_sq: Fraction | None = None
    kappa_sq: Fraction | None = None
    kappa_float: float | None = None
    source: str = ORACLE
    skipped_reason: str | None = None

    def __post_init__(self):
        if self.skipped_reason is None:
            if self.kappa_sq != self.norm_sq * self.inv_norm_sq:
                raise ValueError("kappa_sq must equal norm_sq * inv_norm_sq")

    @classmethod
    def from_norms(cls, family: str, params, norm_sq, inv_norm_sq, source: str = ORACLE) -> "ConditionReport":
        norm_sq, inv_norm_sq = as_rational(norm_sq), as_rational(inv_norm_sq)
        k2 = norm_sq * inv_norm_sq
        return cls(family, dict(params), norm_sq, inv_norm_sq, k2, sqrt_float(k2), source)

    @classmethod
    def skipped(cls, family: str, params, reason: str) -> "ConditionReport":
        return cls(family, dict(params), source=ORACLE, skipped_reason=reason)

    @property
    def is_skipped(self) -> bool:
        return self.skipped_reason is not None


def condition_report(M: LabeledMatrix, family: str = "matrix", params=None) -> ConditionReport:
    inv = invert(M)
    return ConditionReport.from_norms(
        family, params or {}, frobenius_norm_sq(M), frobenius_norm_sq(inv), ORACLE
    )


def from_pattern(p: MonicPolynomial, pattern: Sequence[Sequence]) -> LabeledMatrix:
    """Build a labeled matrix from a layout of ``0``, ``1`` and ``"c<k>"`` cells.

    ``"c3"`` denotes the entry ``-c_3``.  Handy for writing down the small
    matrices that appear in worked examples.
    """
    vals, labs = [], []
    for row in pattern:
        vr, lr = [], []
        for cell in row:
            if isinstance(cell, str) and cell.startswith("c"):
                k = int(cell[1:])
                vr.append(-p.coeffs[k])
                lr.append(coef(k))
            elif cell == 0:
                vr.append(Fraction(0))
                lr.append(ZERO)
            elif cell == 1:
                vr.append(Fraction(1))
                lr.append(ONE)
            else:
                raise ValueError(f"bad pattern cell {cell!r}")
        vals.append(vr)
        labs.append(lr)
    return LabeledMatrix(vals, labs)
