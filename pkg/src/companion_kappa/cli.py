"""Command line front end: ``analyze``, ``enumerate`` and ``verify``."""

from __future__ import annotations

import argparse
import json
import sys

from .analyzer import (
    FAMILIES,
    FORMATS,
    AnalysisRequest,
    analyze,
    emit_report,
    parse_ell_range,
    parse_grid,
    parse_input,
    verify_suite,
)
from .errors import CompanionError, NoFeasibleFamilyError, ParseError
from .exact_linalg import condition_report
from .fiedler import all_lattice_paths, generic_polynomial, lattice_to_hessenberg
from .striped import all_stripe_tuples, build_striped

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3


def _write(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    p = parse_input(args.poly)
    families = tuple(f.strip() for f in args.families.split(",") if f.strip()) if args.families else FAMILIES
    req = AnalysisRequest(
        p,
        families=families,
        a_grid=parse_grid(args.a_grid) if args.a_grid else None,
        ell_range=parse_ell_range(args.ell_range) if args.ell_range else None,
        output_format=args.format,
    )
    _write(emit_report(analyze(req), args.format), args.out)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    n = args.n
    if n < 2:
        raise ParseError("--n must be at least 2")
    p = parse_input(args.poly) if args.poly else generic_polynomial(n)
    if p.n != n:
        raise ParseError(f"--poly has degree {p.n}, --n is {n}")
    rows = []
    if args.family == "fiedler":
        for path in all_lattice_paths(n):
            M = lattice_to_hessenberg(path, p).matrix
            rows.append({"path": str(path), "m": path.m, "step_size": path.step_size, **_kappa(M, p)})
    else:
        for t in all_stripe_tuples(n):
            M = build_striped(p, t).matrix
            rows.append({"stripes": list(t.parts), **_kappa(M, p)})
    doc = {"n": n, "family": args.family, "coeffs": [str(c) for c in p.coeffs], "count": len(rows), "forms": rows}
    _write(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def _kappa(M, p) -> dict:
    if p.coeffs[0] == 0:
        return {"kappa_sq": None}
    r = condition_report(M)
    return {"kappa_sq": str(r.kappa_sq), "kappa_float": r.kappa_float}


def cmd_verify(args) -> int:
    rep = verify_suite(args.seed, args.n_max, args.trials)
    _write(rep.to_json() if args.format == "json" else rep.to_table(), args.out)
    return EXIT_OK if rep.passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="companion-kappa", description="Exact condition numbers of companion matrices.")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="compare every companion family for one polynomial")
    a.add_argument("--poly", required=True, help="coefficient file, JSON document, or inline ascending list like 5,4,3,2")
    a.add_argument("--families", help="comma separated subset of " + ",".join(FAMILIES))
    a.add_argument("--a-grid", help="comma separated perturbation values a")
    a.add_argument("--ell-range", help="lo..hi or comma list")
    a.add_argument("--format", default="json", choices=FORMATS)
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("enumerate", help="list every Fiedler or striped form of degree n")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--family", required=True, choices=("fiedler", "striped"))
    e.add_argument("--poly", help="coefficients to evaluate (default: generic primes)")
    e.add_argument("--out")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="randomized property suite")
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--n-max", type=int, default=10)
    v.add_argument("--trials", type=int, default=50)
    v.add_argument("--format", default="table", choices=("table", "json"))
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except NoFeasibleFamilyError as e:
        print(f"infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except CompanionError as e:
        print(f"infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
