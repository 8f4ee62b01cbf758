"""Command line interface.

Subcommands:

* coeffs    print or save the Fourier coefficients of a form as CSV
* verify    run one of the identity checks and report residuals
* measure   serialize the spherical measure of a form as JSON
* hilbert   two-variable demos: Eisenstein constant fit, rotated lattice

Exit codes: 0 all checks passed, 1 a check failed, 2 usage error,
3 a certified truncation bound could not be pushed below tolerance.

The flags --horizon, --tol, and --grid are accepted both before and
after the subcommand name.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

import sympy as sp

from . import hilbert, measures, modforms, qseries, schwartz, verify

IDENTITIES = ("modular", "psf-radial", "psf-even", "psf-odd", "weil", "eigen")


def _parse_complex(text: str) -> complex:
    return complex(text.strip().replace("i", "j"))


def _parse_grid(text: str) -> tuple:
    return tuple(_parse_complex(p) for p in text.split(",") if p.strip())


def _parse_scalar(text: str):
    return sp.Rational(text)


def _parse_testfn(text: str):
    """pg:a=...,poly=c0,c1,... or rpg:k=...,a=...,polyU=c0,c1,...

    Commas both separate fields and list entries; a comma-separated
    token without '=' extends the previous field's list.
    """
    if ":" not in text:
        raise ValueError("test function syntax: pg:... or rpg:...")
    kind, body = text.split(":", 1)
    fields: dict[str, list[str]] = {}
    current = None
    for token in body.split(","):
        token = token.strip()
        if "=" in token:
            key, val = token.split("=", 1)
            current = key.strip()
            fields[current] = [val.strip()]
        elif current is not None:
            fields[current].append(token)
        else:
            raise ValueError("malformed test function %r" % text)
    if kind == "pg":
        poly = tuple(_parse_scalar(v) for v in fields["poly"])
        return schwartz.PolyGaussian(poly, _parse_scalar(fields["a"][0]))
    if kind == "rpg":
        poly = tuple(_parse_scalar(v) for v in fields["polyU"])
        return schwartz.RadialPolyGaussian(
            int(fields["k"][0]), poly, _parse_scalar(fields["a"][0])
        )
    raise ValueError("unknown test function kind %r" % kind)


def _parse_gen(text: str):
    if text == "S":
        return ("S",)
    kind, _, val = text.partition(":")
    if kind == "rot":
        return ("rot", Fraction(val))
    if kind == "t":
        return ("t", Fraction(val))
    raise ValueError("generator syntax: rot:a, t:b, or S")


def _settings(args) -> tuple[float, float, tuple]:
    tol = args.tol if args.tol is not None else (
        args.g_tol if args.g_tol is not None else 1e-8
    )
    horizon = args.horizon if args.horizon is not None else (
        args.g_horizon if args.g_horizon is not None else 400.0
    )
    grid_text = args.grid if args.grid is not None else args.g_grid
    grid = _parse_grid(grid_text) if grid_text else verify.DEFAULT_GRID
    return tol, horizon, grid


def _emit(report: verify.Report, json_path: str | None) -> bool:
    print(report.summary())
    for r in report.residuals:
        flag = " (vacuous)" if r.vacuous else ""
        print(
            "  %-40s diff=%.3g budget=%.3g%s" % (r.probe, r.diff, r.tail_budget, flag)
        )
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    return report.verdict


def _cmd_coeffs(args) -> int:
    _, horizon, _ = _settings(args)
    f, _law = modforms.get_form(args.form, horizon)
    if args.limit is not None:
        # limit counts classical indices: exponents lambda <= 2 * limit
        terms = tuple(t for t in f.terms if t[0].value() <= 2 * args.limit)
        f = qseries.QSeries(
            terms,
            surd=f.surd,
            growth=f.growth,
            horizon=min(f.horizon, 2 * args.limit),
            gap=f.gap,
        )
    if args.csv:
        qseries.to_csv(f, args.csv)
        print("wrote %d rows to %s" % (len(f.terms), args.csv))
    else:
        print("exponent_num,exponent_den,surd,coeff_re,coeff_im")
        for row in qseries.write_csv_rows(f):
            print(",".join(row))
    return 0


def _cmd_verify(args) -> int:
    tol, horizon, grid = _settings(args)
    f, law = modforms.get_form(args.form, horizon)
    phis = [_parse_testfn(t) for t in args.testfn] if args.testfn else None
    ok = True
    if args.identity == "modular":
        ok = _emit(verify.check_modular_transform(f, law, grid, tol), args.json)
    elif args.identity == "psf-radial":
        mu = verify.measure_of_form(f, law)
        rho = modforms.transform_law_eigenvalue(law)
        if phis is None:
            k = mu.dims[0]
            phis = [
                schwartz.RadialPolyGaussian(k, (1,), sp.Rational(5, 4)),
                schwartz.RadialPolyGaussian(k, (1, 1), sp.Rational(3, 2)),
                schwartz.RadialPolyGaussian(k, (2, 0, 1), 1),
            ]
        ok = _emit(verify.check_psf_radial(mu, rho, phis, tol), args.json)
    elif args.identity in ("psf-even", "psf-odd"):
        mu = verify.measure_of_form(f, law)
        if args.identity == "psf-even":
            nu, nu_hat = measures.descend_even(mu)
            if phis is None:
                phis = [
                    schwartz.PolyGaussian((1,), 1),
                    schwartz.PolyGaussian((1, 0, 1), sp.Rational(3, 2)),
                    schwartz.PolyGaussian((2, 0, 0, 0, 1), sp.Rational(4, 5)),
                ]
            ok = _emit(verify.check_psf_even(nu, nu_hat, phis, tol), args.json)
        else:
            nu, nu_hat = measures.descend_odd(mu)
            if phis is None:
                phis = verify._default_odd_phis()
            ok = _emit(verify.check_psf_odd(nu, nu_hat, phis, tol), args.json)
    elif args.identity == "weil":
        mu = verify.measure_of_form(f, law)
        gens = [_parse_gen(g) for g in args.gen] if args.gen else [
            ("rot", Fraction(1, 2)),
            ("t", Fraction(1)),
            ("S",),
        ]
        for gen in gens:
            ok = _emit(verify.check_weil_equivariance(mu, gen, grid, tol), args.json) and ok
    elif args.identity == "eigen":
        mu = verify.measure_of_form(f, law)
        ok = _emit(verify.check_eigen(mu, eps=args.eps, probes=phis, tol=tol), args.json)
    return 0 if ok else 1


def _cmd_measure(args) -> int:
    _, horizon, _ = _settings(args)
    f, law = modforms.get_form(args.form, horizon)
    mu = verify.measure_of_form(f, law)
    if args.dims is not None and args.dims != mu.dims[0]:
        raise ValueError(
            "form lives in dimension %d, not %d" % (mu.dims[0], args.dims)
        )
    text = measures.measure_to_json(mu)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print("wrote measure with %d terms to %s" % (len(mu.terms), args.out))
    else:
        print(text)
    return 0


def _cmd_hilbert(args) -> int:
    tol, _, _ = _settings(args)
    if args.rotated is not None:
        grid = [(1j, 1j), (2j, 1.5j), (0.25 + 1.2j, -0.3 + 1.5j)]
        res = hilbert.rotated_lattice_residuals(args.rotated, grid, args.radius)
        for (t1, t2), r in zip(grid, res):
            print("rotated A=%d at (%s, %s): residual %.3g" % (args.rotated, t1, t2, r))
        ok = all(r <= tol for r in res)
        print("rotated lattice: %s" % ("pass" if ok else "FAIL"))
        return 0 if ok else 1
    F = hilbert.QuadField(args.disc)
    series, fitted = hilbert.hilbert_eisenstein(F, args.weight, args.trace_bound)
    alt = hilbert.fit_constant_term(
        hilbert.TwoVarSeries(series.terms[1:], series.trace_bound),
        args.weight,
        1j * math.sqrt(2),
    )
    grid = [(2j, 2j), (1.5j, 2.5j), (0.3 + 1.4j, -0.2 + 1.6j)]
    res = hilbert.transformation_residuals(series, args.weight, grid)
    print("fitted constant term: %.15g" % fitted)
    print("fit stability across base points: %.3g" % abs(fitted - alt))
    for (t1, t2), r in zip(grid, res):
        print("transformation at (%s, %s): residual %.3g" % (t1, t2, r))
    ok = abs(fitted - alt) <= tol and all(r <= tol for r in res)
    print("hilbert eisenstein: %s" % ("pass" if ok else "FAIL"))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--horizon", type=float, default=None,
                        help="exponent truncation horizon (default 400)")
    common.add_argument("--tol", type=float, default=None,
                        help="residual tolerance (default 1e-8)")
    common.add_argument("--grid", type=str, default=None,
                        help="comma-separated tau grid, e.g. '0.5i,1i,0.3+1.1i'")

    parser = argparse.ArgumentParser(
        prog="sphmeas",
        description="Spherical eigenmeasures, modular coefficients, and "
        "certified summation-formula checks.",
    )
    parser.add_argument("--horizon", dest="g_horizon", type=float, default=None,
                        help=argparse.SUPPRESS)
    parser.add_argument("--tol", dest="g_tol", type=float, default=None,
                        help=argparse.SUPPRESS)
    parser.add_argument("--grid", dest="g_grid", type=str, default=None,
                        help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", parents=[common],
                       help="print a form's coefficients as CSV")
    p.add_argument("--form", required=True,
                   help="theta^k, delta, E6, etaprod:{d:r,...}, "
                   "frickeE:N=..,k2=..,sign=..")
    p.add_argument("--limit", type=float, default=None,
                   help="largest classical index m to keep")
    p.add_argument("--csv", type=str, default=None, help="output path")
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser("verify", parents=[common],
                       help="check an identity and report residuals")
    p.add_argument("identity", choices=IDENTITIES)
    p.add_argument("--form", required=True)
    p.add_argument("--testfn", action="append", default=None,
                   help="pg:a=..,poly=c0,c1,.. or rpg:k=..,a=..,polyU=c0,c1,..")
    p.add_argument("--gen", action="append", default=None,
                   help="weil generator: rot:a, t:b, or S (repeatable)")
    p.add_argument("--eps", type=int, default=None,
                   help="eigen exponent override for the eigen identity")
    p.add_argument("--json", type=str, default=None,
                   help="also write the full report JSON to this path")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("measure", parents=[common],
                       help="serialize a form's spherical measure")
    p.add_argument("--form", required=True)
    p.add_argument("--dims", type=int, default=None,
                   help="expected dimension (checked against the form)")
    p.add_argument("--out", type=str, default=None, help="output path")
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("hilbert", parents=[common],
                       help="real-quadratic two-variable demos")
    p.add_argument("--disc", type=int, default=5, choices=hilbert.SUPPORTED_D)
    p.add_argument("--weight", type=int, default=2)
    p.add_argument("--trace-bound", type=int, default=30)
    p.add_argument("--rotated", type=int, default=None,
                   help="check the rotated lattice theta for this A instead")
    p.add_argument("--radius", type=int, default=40)
    p.set_defaults(func=_cmd_hilbert)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except qseries.TruncationError as exc:
        print("truncation: %s" % exc, file=sys.stderr)
        return 3
    except (ValueError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
