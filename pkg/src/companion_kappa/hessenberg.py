"""
Unit lower Hessenberg companion forms.

Layout (0-indexed, n x n)::

    rows 0..m-1      [ 0 | I_m | O       ]
    rows m..n-1      [     R   | I_{n-m-1} ]
                     [         | 0^T       ]

``R`` is (n-m) x (m+1) and occupies rows ``m..n-1`` and columns ``0..m``.
Every superdiagonal entry is one.  The coefficient ``-c_k`` sits on
subdiagonal ``n-1-k``, so ``-c_0`` is always the bottom-left corner and
``-c_{n-1}`` the top-right corner of ``R``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import ZeroConstantTermError
from .exact_linalg import (
    ONE,
    ZERO,
    LabeledMatrix,
    MonicPolynomial,
    char_poly,
    coef,
)


@dataclass(frozen=True)
class HessenbergCompanion:
    p: MonicPolynomial
    m: int
    matrix: LabeledMatrix
    # coefficient index -> (row, col) inside R
    placement: Mapping[int, tuple[int, int]] = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return self.p.n

    @property
    def R(self) -> list[list[Fraction]]:
        m = self.m
        return [list(self.matrix.values[i][: m + 1]) for i in range(m, self.n)]

    @property
    def u(self) -> list[Fraction]:
        return [row[0] for row in self.R[:-1]]

    @property
    def y(self) -> list[Fraction]:
        return self.R[-1][1:]

    @property
    def H(self) -> list[list[Fraction]]:
        return [row[1:] for row in self.R[:-1]]

    def u_is_zero(self) -> bool:
        return all(v == 0 for v in self.u)

    def y_is_zero(self) -> bool:
        return all(v == 0 for v in self.y)


def from_placement(p: MonicPolynomial, m: int, placement: Mapping[int, tuple[int, int]]) -> HessenbergCompanion:
    """Assemble the Hessenberg form with ``-c_k`` at R-coordinates ``placement[k]``."""
    n = p.n
    if not 0 <= m <= n - 1:
        raise ValueError(f"m={m} outside [0, {n - 1}]")
    vals = [[Fraction(0)] * n for _ in range(n)]
    labs = [[ZERO] * n for _ in range(n)]
    for i in range(n - 1):
        vals[i][i + 1] = Fraction(1)
        labs[i][i + 1] = ONE
    for k, (r, s) in placement.items():
        if not (0 <= r < n - m and 0 <= s <= m):
            raise ValueError(f"coefficient {k} placed outside R at {(r, s)}")
        i, j = m + r, s
        if labs[i][j] is not ZERO:
            raise ValueError(f"two coefficients placed at R{(r, s)}")
        vals[i][j] = -p.coeffs[k]
        labs[i][j] = coef(k)
    return HessenbergCompanion(p, m, LabeledMatrix(vals, labs), dict(placement))


def build_frobenius(p: MonicPolynomial) -> HessenbergCompanion:
    """Frobenius companion matrix in first-column layout (m = 0)."""
    n = p.n
    if n < 2:
        raise ValueError("degree must be at least 2")
    return from_placement(p, 0, {k: (n - 1 - k, 0) for k in range(n)})


@dataclass
class Validation:
    ok: bool
    diagnostics: list[str]
    m: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_unit_sparse(M: LabeledMatrix, p: MonicPolynomial, check_char_poly: bool = True) -> Validation:
    """Check every structural clause of the unit lower Hessenberg companion form.

    All violations are collected; nothing short-circuits except a dimension
    mismatch.
    """
    n = p.n
    diag: list[str] = []
    if M.n != n:
        return Validation(False, [f"dimension {M.n} != degree {n}"])

    ones = 0
    seen: dict[int, list[tuple[int, int]]] = {}
    for i in range(n):
        for j in range(n):
            lab, v = M.labels[i][j], M.values[i][j]
            if lab.kind == "expr":
                diag.append(f"entry ({i},{j}) is an expression, not a pure coefficient")
            elif lab.kind == "one":
                ones += 1
                if j != i + 1:
                    diag.append(f"unit entry ({i},{j}) is off the superdiagonal")
            elif lab.kind == "coef":
                k = lab.index
                if not 0 <= k < n:
                    diag.append(f"entry ({i},{j}) refers to nonexistent coefficient c_{k}")
                    continue
                seen.setdefault(k, []).append((i, j))
                if v != -p.coeffs[k]:
                    diag.append(f"entry ({i},{j}) labeled -c_{k} holds {v}, expected {-p.coeffs[k]}")
                if i - j != n - 1 - k:
                    diag.append(f"-c_{k} at ({i},{j}) lies on subdiagonal {i - j}, expected {n - 1 - k}")
            if j > i + 1 and lab.kind != "zero":
                diag.append(f"entry ({i},{j}) above the superdiagonal is nonzero")
    if ones != n - 1:
        diag.append(f"{ones} unit entries, expected {n - 1}")
    for i in range(n - 1):
        if M.labels[i][i + 1].kind != "one":
            diag.append(f"superdiagonal entry ({i},{i + 1}) is not a unit")
    for k in range(n):
        cnt = len(seen.get(k, []))
        if cnt != 1:
            diag.append(f"-c_{k} appears {cnt} times")
    if M.labels[n - 1][0] != coef(0):
        diag.append(f"entry ({n - 1},0) is not -c_0")

    m = None
    top = seen.get(n - 1)
    if top and len(top) == 1 and top[0][0] == top[0][1]:
        m = top[0][0]
        for k, poss in seen.items():
            for i, j in poss:
                if i < m or j > m:
                    diag.append(f"-c_{k} at ({i},{j}) lies outside the R block for m={m}")
        zeros_in_R = sum(
            1 for i in range(m, n) for j in range(m + 1) if M.labels[i][j].kind == "zero"
        )
        if zeros_in_R != m * (n - 1 - m):
            diag.append(f"R has {zeros_in_R} zeros, expected {m * (n - 1 - m)}")
    else:
        diag.append("cannot locate -c_{n-1} on the main diagonal; block size m undetermined")

    if check_char_poly and not diag and char_poly(M) != p:
        diag.append("characteristic polynomial differs from p")
    return Validation(not diag, diag, m)


def hessenberg_from_matrix(M: LabeledMatrix, p: MonicPolynomial) -> HessenbergCompanion:
    v = validate_unit_sparse(M, p)
    if not v:
        raise ValueError("not a unit lower Hessenberg companion form: " + "; ".join(v.diagnostics))
    m = v.m
    placement = {lab.index: (i - m, j) for i, row in enumerate(M.labels) for j, lab in enumerate(row) if lab.kind == "coef"}
    return HessenbergCompanion(p, m, M, placement)


def hessenberg_inverse(C: HessenbergCompanion) -> LabeledMatrix:
    """Closed-form block inverse of a unit lower Hessenberg companion form.

    With C = [[0, I_m, O], [u, H, I], [-c_0, y^T, 0^T]] the inverse is::

        [ y^T/c_0         0^T   -1/c_0 ]
        [ I_m             O      0     ]
        [ -u y^T/c_0 - H  I      u/c_0 ]
    """
    n, m = C.n, C.m
    c0 = C.p.coeffs[0]
    if c0 == 0:
        raise ZeroConstantTermError("c_0 = 0: the companion matrix is singular")
    u, y, H = C.u, C.y, C.H
    k = n - m - 1  # rows of u / H
    out = [[Fraction(0)] * n for _ in range(n)]
    for j in range(m):
        out[0][j] = y[j] / c0
    out[0][n - 1] = -1 / c0
    for i in range(m):
        out[1 + i][i] = Fraction(1)
    for i in range(k):
        r = 1 + m + i
        for j in range(m):
            out[r][j] = -u[i] * y[j] / c0 - H[i][j]
        out[r][m + i] = Fraction(1)
        out[r][n - 1] = u[i] / c0
    return LabeledMatrix.unlabeled(out, "hessenberg inverse")
