"""Independent reference computations used only by the tests.

Nothing here calls the package's inversion or characteristic polynomial
code, so agreement with the package is a genuine cross-check.
"""

from fractions import Fraction


def det(rows):
    """Cofactor expansion along the first row (fine for n <= 7)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j, a in enumerate(rows[0]):
        if a == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * a * det(minor)
    return total


def charpoly_by_interpolation(rows):
    """Ascending c_0..c_{n-1} of det(xI - A), recovered from n samples.

    det(xI - A) - x^n has degree < n, so its values at x = 0..n-1 fix it;
    the coefficients come from solving the Vandermonde system by hand.
    """
    n = len(rows)
    xs = list(range(n))
    ys = []
    for x in xs:
        shifted = [[(x if i == j else 0) - rows[i][j] for j in range(n)] for i in range(n)]
        ys.append(det(shifted) - Fraction(x) ** n)
    # Newton divided differences, then expand to monomial basis
    coef = [Fraction(y) for y in ys]
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - k])
    poly = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        # poly <- poly * (x - xs[k]) + coef[k]
        shifted = [Fraction(0)] + poly[:-1]
        poly = [s - xs[k] * q for s, q in zip(shifted, poly)]
        poly[0] += coef[k]
    return poly


def matmul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    return [[sum((A[i][l] * B[l][j] for l in range(m)), Fraction(0)) for j in range(p)] for i in range(n)]


def is_identity(rows):
    n = len(rows)
    return all(rows[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def norm_sq(rows):
    return sum((Fraction(x) ** 2 for r in rows for x in r), Fraction(0))


def inverse_by_cramer(rows):
    """Adjugate over determinant; independent of any elimination routine."""
    n = len(rows)
    d = det(rows)
    if n == 1:
        return [[1 / d]]
    adj = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]
            adj[j][i] = (-1) ** (i + j) * det(minor)
    return [[x / d for x in r] for r in adj]


def kappa_sq(rows):
    return norm_sq(rows) * norm_sq(inverse_by_cramer(rows))


def permutation_similar(A, B):
    """Brute force over all permutations (n <= 6)."""
    from itertools import permutations

    n = len(A)
    for perm in permutations(range(n)):
        if all(A[perm[i]][perm[j]] == B[i][j] for i in range(n) for j in range(n)):
            return True
    return False


def equivalent_brute(A, B):
    At = [list(r) for r in zip(*A)]
    return permutation_similar(A, B) or permutation_similar(At, B)
