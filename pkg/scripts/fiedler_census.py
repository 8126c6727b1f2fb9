"""Group all n! Fiedler products by initial step size and show that the
condition number depends on nothing else.

    python3 scripts/fiedler_census.py [n]
"""

import random
import sys
from collections import defaultdict
from itertools import permutations

from companion_kappa.exact_linalg import condition_report
from companion_kappa.fiedler import fiedler_product, initial_step_size, kappa_fiedler_sq
from companion_kappa.sampling import random_polynomial


def main(argv):
    n = int(argv[1]) if len(argv) > 1 else 5
    p = random_polynomial(random.Random(0), n)
    print(f"p(x) = {p}")
    groups = defaultdict(list)
    for sigma in permutations(range(n)):
        F = fiedler_product(sigma, p)
        groups[initial_step_size(F)].append(condition_report(F).kappa_sq)
    for t in sorted(groups):
        ks = set(groups[t])
        print(f"t={t}: {len(groups[t]):4d} products, distinct kappa^2 {len(ks)}, closed form matches: {ks == {kappa_fiedler_sq(p, t)}}")


if __name__ == "__main__":
    main(sys.argv)
