"""Seeded random generators for polynomials and unit sparse forms."""

from __future__ import annotations

import random
from fractions import Fraction

from .exact_linalg import MonicPolynomial
from .hessenberg import HessenbergCompanion, from_placement


def random_rational(rng: random.Random, size: int = 9, max_den: int = 5) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, max_den))


def random_polynomial(
    rng: random.Random,
    n: int,
    c0=None,
    nonzero_c0: bool = True,
    integer: bool = False,
) -> MonicPolynomial:
    draw = (lambda: Fraction(rng.randint(-9, 9))) if integer else (lambda: random_rational(rng))
    cs = [draw() for _ in range(n)]
    if c0 is not None:
        cs[0] = Fraction(c0)
    elif nonzero_c0:
        while cs[0] == 0:
            cs[0] = draw()
    return MonicPolynomial(tuple(cs))


def random_c0(rng: random.Random, regime: str) -> Fraction:
    """A constant term with |c_0| below, equal to, or above one."""
    sign = rng.choice((-1, 1))
    if regime == "lt":
        den = rng.randint(2, 9)
        return sign * Fraction(rng.randint(1, den - 1), den)
    if regime == "eq":
        return Fraction(sign)
    if regime == "gt":
        den = rng.randint(1, 5)
        return sign * Fraction(rng.randint(den + 1, 5 * den + 5), den)
    raise ValueError(regime)


def random_unit_sparse(
    rng: random.Random,
    p: MonicPolynomial,
    m: int | None = None,
    zero_block: str | None = None,
) -> HessenbergCompanion:
    """A random unit lower Hessenberg companion form of p.

    Each -c_k is put at a uniformly chosen cell of R on subdiagonal n-1-k.
    ``zero_block`` = "u" or "y" forbids coefficients in that part of R;
    u = 0 needs m >= 1 and y = 0 needs m <= n - 2.
    """
    n = p.n
    if m is None:
        lo = 1 if zero_block == "u" else 0
        hi = n - 2 if zero_block == "y" else n - 1
        m = rng.randint(lo, hi)
    rows = n - m
    placement = {}
    for k in range(n):
        d = n - 1 - k
        cells = []
        for s in range(m + 1):
            r = d - m + s
            if not 0 <= r < rows:
                continue
            if zero_block == "u" and s == 0 and r < rows - 1:
                continue
            if zero_block == "y" and s >= 1 and r == rows - 1:
                continue
            cells.append((r, s))
        if not cells:
            raise ValueError(f"no admissible cell for c_{k} with m={m}, zero_block={zero_block!r}")
        placement[k] = rng.choice(cells)
    return from_placement(p, m, placement)
