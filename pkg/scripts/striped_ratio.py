"""How much a rank-one striped form gains over every Fiedler form.

For x^6 + b s^3 x^5 + b s^2 x^4 + b s^2 x^3 + b s x^2 + s x + 1 the ratio
kappa(F)/kappa(S) grows like s when b is fixed.  Also sweeps the two
asymptotes of the general structured family.

    python3 scripts/striped_ratio.py
"""

from fractions import Fraction

from companion_kappa.striped import StructuredPolynomial, asymptote_sweep, rank_one_example, structured_ratio


def main():
    print("# scale  ratio^2 (exact)  ratio  ratio/scale")
    for s in (1, 2, 5, 10, 20, 50, 100):
        r = structured_ratio(rank_one_example(1, s)).ratio_sq
        ratio = float(r) ** 0.5
        print(f"{s:5d}  {str(r):>16}  {ratio:9.4f}  {ratio / s:.4f}")

    sp = StructuredPolynomial(3, 2, (1, 2), (Fraction(1, 2), 1))
    for grow in ("b", "a"):
        print(f"\n# growing {grow}: magnitude, ratio^2, limit, relative error")
        for mag, ratio_sq, limit, err, ok in asymptote_sweep(sp, grow):
            print(f"{mag:5d}  {float(ratio_sq):14.6g}  {float(limit):14.6g}  {float(err):.2e}  {'ok' if ok else 'off'}")


if __name__ == "__main__":
    main()
