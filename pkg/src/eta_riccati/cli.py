"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 usage or domain error,
3 numerical non-convergence (including "no threshold in the window").
"""

import argparse
import shlex
import sys
from pathlib import Path

from . import __version__, mc, report, sonify
from .errors import (
    ConvergenceError,
    DomainError,
    InfeasibleTargetError,
    NoCrossingError,
    PrecisionError,
    SingularDenominatorError,
)
from .fastderiv import eta_deriv_fast
from .riccati import trapping_threshold
from .series import EtaPoint, SeriesAccuracy, eta_deriv_direct

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text, output):
    if output in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(output).write_text(text, encoding="utf-8")


def _flags(argv):
    return "eta-riccati " + " ".join(shlex.quote(a) for a in argv)


def cmd_eval(args, argv):
    p = EtaPoint(args.a, args.t)
    if args.method == "fast":
        rep = eta_deriv_fast(p, args.k, args.N, extended=args.extended)
        print(f"value = {rep.value!r}")
        if args.extended:
            print(f"value_lo = {rep.value_lo!r}")
        print(f"truncation_bound = {rep.truncation_bound:.3e}")
        print(f"rounding_estimate = {rep.rounding_estimate:.3e}")
        print(f"terms = {rep.N}")
        return EXIT_OK
    res = eta_deriv_direct(p, args.k, _accuracy(args))
    print(f"value = {res.value!r}")
    print(f"error_estimate = {res.error_estimate:.3e}")
    print(f"rounding_estimate = {res.rounding_estimate:.3e}")
    print(f"terms = {res.terms_used}")
    print(f"converged = {res.converged}")
    if not res.converged:
        print("error: series did not reach the requested tolerance", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _accuracy(args):
    return SeriesAccuracy(max_terms=args.max_terms, tol=args.tol, tail=not args.no_tail)


def cmd_riccati_table(args, argv):
    rows = report.riccati_table(args.a, args.t, _accuracy(args))
    if args.format == "csv":
        text = report.to_csv(report.TABLE_COLUMNS, report.riccati_table_rows(rows), _flags(argv))
    else:
        text = report.riccati_table_markdown(rows)
    _emit(text, args.output)
    bad = [r for r in rows if not r.converged]
    if bad:
        print(f"error: {len(bad)} row(s) did not converge", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_convergence_table(args, argv):
    rows = report.convergence_table(args.a, args.t, args.N)
    if args.format == "csv":
        text = report.to_csv(report.CONVERGENCE_COLUMNS, report.convergence_table_rows(rows), _flags(argv))
    else:
        text = report.convergence_table_markdown(rows)
    _emit(text, args.output)
    return EXIT_OK


def cmd_figure_data(args, argv):
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    for a in args.a:
        panels = report.figure_data(a, args.t_min, args.t_max, args.points)
        for name, rows in panels.items():
            path = out / f"{name}_a{a:g}.csv"
            path.write_text(report.to_csv(report.PANELS[name], rows, f"{_flags(argv)}; a={a:g}"),
                            encoding="utf-8")
            print(path)
    return EXIT_OK


def cmd_threshold(args, argv):
    try:
        res = trapping_threshold(args.a)
    except NoCrossingError as exc:
        print(f"no crossing: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    print(f"a = {res.a!r}")
    print(f"t_star = {res.t_star:.10f}")
    print(f"residual = {res.residual:.3e}")
    print(f"iterations = {res.iterations}")
    print(f"bracket = [{res.bracket[0]:.12f}, {res.bracket[1]:.12f}]")
    return EXIT_OK


def cmd_validate_mc(args, argv):
    checks = mc.validate_suite(mc.McConfig(args.samples, args.seed))
    width = max(len(c.name) for c in checks)
    print(f"{'check':<{width}}  {'estimate':>12}  {'stderr':>10}  {'target':>12}  {'z':>6}  result")
    for c in checks:
        e = c.estimate
        print(f"{c.name:<{width}}  {e.mean:12.8f}  {e.stderr:10.3e}  {c.target:12.8f}  "
              f"{c.zscore:6.2f}  {'pass' if c.passed else 'FAIL'}")
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} within {mc.Z_BAND:g} stderr")
    return EXIT_OK if failed == 0 else EXIT_VALIDATION


def cmd_sonify(args, argv):
    overrides = {k: v for k, v in (("a", args.a), ("t_start", args.t_start),
                                   ("t_end", args.t_end), ("steps", args.steps)) if v is not None}
    doc = sonify.compose(sonify.preset(args.preset, **overrides))
    data = sonify.write_midi(doc)
    Path(args.output).write_bytes(data)
    print(f"wrote {args.output}: {len(doc.events)} notes, {doc.tempo_bpm:.2f} bpm, "
          f"{doc.seconds:.1f} s, {len(data)} bytes")
    return EXIT_OK


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _add_series_flags(p):
    p.add_argument("--max-terms", type=_positive_int, default=100_000)
    p.add_argument("--tol", type=float, default=1e-15)
    p.add_argument("--no-tail", action="store_true",
                   help="plain partial sums, no Euler tail correction")


def build_parser():
    parser = _Parser(prog="eta-riccati", description="Generalized Dirichlet eta toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate eta_a^(k)(t)")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--method", choices=("direct", "fast"), default="direct")
    p.add_argument("--N", type=int, default=30)
    p.add_argument("--extended", action="store_true", help="double-double coefficients (fast only)")
    _add_series_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("riccati-table", help="phi, phi_e, phi_as and their ratio on an (a, t) grid")
    p.add_argument("--a", type=float, nargs="+", default=list(report.TABLE_A))
    p.add_argument("--t", type=float, nargs="+", default=list(report.TABLE_T))
    p.add_argument("--format", choices=("markdown", "csv"), default="markdown")
    p.add_argument("-o", "--output")
    _add_series_flags(p)
    p.set_defaults(func=cmd_riccati_table)

    p = sub.add_parser("convergence-table", help="truncation error of the geometric algorithm vs N")
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--N", type=_positive_int, nargs="+", default=list(report.CONVERGENCE_N))
    p.add_argument("--format", choices=("markdown", "csv"), default="markdown")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_convergence_table)

    p = sub.add_parser("figure-data", help="CSV data for the four validation panels")
    p.add_argument("--a", type=float, nargs="+", default=[1.0, 2.0, 10.0, 11.0])
    p.add_argument("--t-min", type=float, default=report.FIGURE_GRID[0])
    p.add_argument("--t-max", type=float, default=report.FIGURE_GRID[1])
    p.add_argument("--points", type=_positive_int, default=report.FIGURE_GRID[2])
    p.add_argument("-o", "--output-dir", default="figure-data")
    p.set_defaults(func=cmd_figure_data)

    p = sub.add_parser("threshold", help="first zero of eta'' + 2 eta'")
    p.add_argument("--a", type=float, required=True)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("validate-mc", help="Monte Carlo checks of the probabilistic representation")
    p.add_argument("--samples", type=int, default=10 ** 6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_validate_mc)

    p = sub.add_parser("sonify", help="write a Standard MIDI File from a Riccati trajectory")
    p.add_argument("--preset", choices=sorted(sonify.PRESETS), default="theme")
    p.add_argument("--a", type=float)
    p.add_argument("--t-start", type=float)
    p.add_argument("--t-end", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_sonify)
    return parser


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, argv)
    except (DomainError, InfeasibleTargetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, PrecisionError, SingularDenominatorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
