"""kappa(F)/kappa(M) for p = x^n + t x^{n-1} + t x^ell + t^2 x^{ell-1} + 1 with a = t.

Prints the exact-inverse ratio next to the one implied by the published
product formula; both divided by t should approach 1/sqrt(2).

    python3 scripts/perturbation_asymptotics.py [n] [ell]
"""

import sys

from companion_kappa.analyzer import perturbation_plotdata


def main(argv):
    n = int(argv[1]) if len(argv) > 1 else 7
    ell = int(argv[2]) if len(argv) > 2 else 3
    ts = [1, 2, 5, 10, 20, 50, 100, 1000, 10000]
    sys.stdout.write(perturbation_plotdata(n, ell, ts))
    print(f"# 1/sqrt(2) = {2 ** -0.5!r}")


if __name__ == "__main__":
    main(sys.argv)
