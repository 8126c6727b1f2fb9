"""Degree-9 comparison: every Fiedler step size against every stripe tuple.

    python3 scripts/worked_example.py
"""

from companion_kappa.analyzer import AnalysisRequest, analyze, emit_report
from companion_kappa.exact_linalg import MonicPolynomial
from companion_kappa.striped import build_striped, stripe_dominance_check

# x^9 + 8x^8 + 6x^7 + 2x^6 + 5x^5 + 8x^4 + 3x^3 + 3x^2 + 2x + 1
p = MonicPolynomial((1, 2, 3, 3, 8, 5, 2, 6, 8))


def main():
    print(f"p(x) = {p}\n")
    print(build_striped(p, (3, 3, 3)).matrix)
    dom = stripe_dominance_check(p, 3, 2)
    print(f"\ncross terms {dom.lhs} <= {dom.rhs}: {dom.holds} (termwise: {dom.termwise})\n")
    res = analyze(AnalysisRequest(p, families=("frobenius", "fiedler", "striped")))
    print(emit_report(res, "table"))


if __name__ == "__main__":
    main()
