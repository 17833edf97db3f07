"""Command-line entry point: ``modpi verify ...``, ``modpi pi ...``, ``modpi report``.

Every check prints one ``CHECK <name> <PASS|FAIL> <detail>`` line.  The exit
code is 0 when all executed checks pass, 1 on any failure and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from . import modeq, pi_engine, quatforms, singular
from .qseries import lemma1_check, nome
from .report import CheckReport, make_report

Thunk = Callable[[], "CheckReport | list[CheckReport]"]

GROUPS = ("span", "modeq", "singular", "identities", "arith")
SERIES_N = (19, 43, 67, 163)


def _opt(value, default):
    return default if value is None else value


def span_checks(args) -> list[Thunk]:
    order = _opt(args.order, 400)
    return [lambda: quatforms.span_identity_check(order, data=args.data)]


def modeq_checks(args) -> list[Thunk]:
    order = _opt(args.order, 120)
    ids = modeq.TABLE_IDS if args.table is None else (args.table,)

    def verify():
        tables = modeq.load_modeq_tables(args.data)
        need = max(tables[i].required_base_order(order) for i in ids)
        funcs = modeq.modular_functions(need, args.data)
        return [modeq.verify_modeq(tables[i], funcs, order) for i in ids]

    thunks: list[Thunk] = [verify]
    if args.solve:
        thunks += [lambda i=i: modeq.round_trip_check(i, order, args.data) for i in ids]
    return thunks


def singular_checks(args) -> list[Thunk]:
    prec = args.prec

    def exact_f():
        table = modeq.load_modeq_tables(args.data)["f-varphi"]
        return [modeq.factorization_check(table), modeq.pole_value_check(table)]

    return [
        singular.g2_check,
        singular.constant_recovery_check,
        singular.verify_v_c_identity,
        exact_f,
        lambda: singular.verify_f_value(prec, args.data),
        lambda: modeq.cubic_root_check(prec, args.data),
        lambda: singular.verify_table_consistency(prec, args.data),
    ]


def identity_checks(args) -> list[Thunk]:
    prec = args.prec
    q163 = nome(163, prec + 64)
    grams = quatforms.gram_matrices(args.data)
    thunks: list[Thunk] = [
        lambda: lemma1_check(_opt(args.order, 5)),
        lambda: singular.numeric_check("cvalue", prec, tol=1e-30),
    ]
    thunks += [lambda n=n: singular.numeric_check("minpoly_s", prec, n, tol=1e-30)
               for n in SERIES_N]
    thunks += [
        lambda: singular.numeric_check("lemma2", prec, 163, tol=1e-20),
        lambda: singular.numeric_check("etatranslog", prec, 163, tol=1e-25),
        lambda: singular.numeric_check("kexp", prec, "0.05", tol=1e-25),
        lambda: singular.numeric_check("kexp", prec, q163, tol=1e-25),
        lambda: singular.numeric_check("clausen", prec, "0.05", tol=1e-25),
        lambda: singular.numeric_check("clausen", prec, q163, tol=1e-25),
        lambda: singular.numeric_check("G0_const", prec, tol=1e-30),
    ]
    thunks += [lambda t=t: quatforms.fricke_numeric_check(grams[0], t, prec, tol=1e-20)
               for t in (Fraction(1, 2), 2)]
    return thunks


def arith_checks(args) -> list[Thunk]:
    def invariants():
        inv = quatforms.arith_invariants(163)
        h = quatforms.class_number(-163)
        ok = inv.type_number_T == 8 and inv.genus_g == 13 and h == 1
        return make_report("arith_p163", ok,
                           f"T = {inv.type_number_T}, genus = {inv.genus_g}, h(-163) = {h}")

    return [invariants,
            lambda: quatforms.independence_check(_opt(args.order, 100), args.data)]


def pi_suite_checks(args) -> list[Thunk]:
    thunks: list[Thunk] = [lambda: pi_engine.pi_check(1000)[0],
                           pi_engine.series_equivalence_check]
    thunks += [lambda n=n: pi_engine.general_series_pi(n, 60 if n == 163 else 30)
               for n in SERIES_N]
    thunks += [lambda s=s: pi_engine.ramanujan_series_check(s, 100)
               for s in ("rampi1", "rampi2")]
    return thunks


GROUP_BUILDERS = {
    "span": span_checks,
    "modeq": modeq_checks,
    "singular": singular_checks,
    "identities": identity_checks,
    "arith": arith_checks,
}


def build_checks(group: str, args) -> list[Thunk]:
    if group != "all":
        return GROUP_BUILDERS[group](args)
    # ``all`` ignores --order so every group runs at its acceptance order, and
    # includes the table round trips
    base = argparse.Namespace(**{**vars(args), "order": None, "solve": True, "table": None})
    thunks: list[Thunk] = []
    for g in GROUPS:
        thunks += GROUP_BUILDERS[g](base)
    return thunks + pi_suite_checks(base)


def _guarded(thunk: Thunk) -> list[CheckReport]:
    try:
        out = thunk()
    except Exception as exc:  # a crashing check is a failing check, not a crashed run
        name = getattr(thunk, "__name__", "check").strip("<>")
        return [make_report(f"error_{name}", False, f"{type(exc).__name__}: {exc}")]
    return out if isinstance(out, list) else [out]


def run_checks(thunks: Sequence[Thunk], jobs: int = 1) -> list[CheckReport]:
    """Run in a pool; results come back in submission order."""
    if jobs <= 1:
        results = [_guarded(t) for t in thunks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_guarded, thunks))
    return [r for rs in results for r in rs]


def emit(reports: Sequence[CheckReport], fmt: str = "text", out=None) -> None:
    out = sys.stdout if out is None else out
    for r in reports:
        out.write((r.to_json() if fmt == "structured" else r.line()) + "\n")
    out.flush()


def _exit_code(reports: Sequence[CheckReport]) -> int:
    return 0 if all(r.passed for r in reports) else 1


def cmd_verify(args) -> int:
    reports = run_checks(build_checks(args.target, args), args.jobs)
    emit(reports)
    return _exit_code(reports)


def cmd_report(args) -> int:
    reports = run_checks(build_checks(args.target, args), args.jobs)
    emit(reports, args.format)
    return _exit_code(reports)


def cmd_pi(args) -> int:
    digits = _opt(args.digits, 100 if args.method == "ramanujan" else 1000)
    reports: list[CheckReport] = []
    if args.method in ("chudnovsky", "machin"):
        if args.check:
            report, value = pi_engine.pi_check(digits, args.method)
            reports.append(report)
        elif args.method == "chudnovsky":
            value = pi_engine.chudnovsky_pi(digits)
        else:
            value = pi_engine.machin_pi(digits)
        sys.stdout.write(pi_engine.format_digits(pi_engine.decimal_digits(value, digits)) + "\n")
    elif args.method == "ramanujan":
        if digits > 200:
            raise _Usage("ramanujan accepts --digits up to 200")
        names = ("rampi1", "rampi2") if args.series is None else (args.series,)
        reports += [pi_engine.ramanujan_series_check(s, digits) for s in names]
    else:
        ns = SERIES_N if args.n is None else (args.n,)
        for n in ns:
            d = digits if args.digits is not None else (60 if n == 163 else 30)
            reports.append(pi_engine.general_series_pi(n, d))
    emit(reports)
    return _exit_code(reports)


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--order", type=int, help="series truncation order for the selected check")
    p.add_argument("--prec", type=int, default=128, help="working precision in bits")
    p.add_argument("--data", help="data directory (default: $MODPI_DATA or the bundled data)")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for independent checks")
    p.add_argument("--table", choices=modeq.TABLE_IDS, help="restrict modeq to one table")
    p.add_argument("--all", dest="all_tables", action="store_true",
                   help="modeq: every table (the default)")
    p.add_argument("--solve", action="store_true",
                   help="modeq: also re-derive each table from the series")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="modpi", description="Modular verification of the Chudnovsky series.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run verification checks")
    v.add_argument("target", choices=GROUPS + ("all",))
    _common(v)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="run checks and print a report")
    r.add_argument("target", nargs="?", default="all", choices=GROUPS + ("all",))
    r.add_argument("--format", choices=("text", "structured"), default="text")
    _common(r)
    r.set_defaults(func=cmd_report)

    p = sub.add_parser("pi", help="compute pi or check a 1/pi series")
    p.add_argument("method", choices=("chudnovsky", "machin", "ramanujan", "series"))
    p.add_argument("--digits", type=int)
    p.add_argument("--check", action="store_true", help="compare against the other method")
    p.add_argument("--n", type=int, choices=SERIES_N)
    p.add_argument("--series", choices=("rampi1", "rampi2"))
    p.add_argument("--data", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_pi)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "data", None) is None:
        args.data = os.environ.get("MODPI_DATA")
    if args.data is not None and not os.path.isdir(args.data):
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"modpi: error: data directory {args.data} does not exist\n")
        return 2
    digits = getattr(args, "digits", None)
    if digits is not None and digits < 1:
        parser.print_usage(sys.stderr)
        sys.stderr.write("modpi: error: --digits must be >= 1\n")
        return 2
    try:
        return args.func(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"modpi: error: {exc}\n")
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write(f"modpi: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
