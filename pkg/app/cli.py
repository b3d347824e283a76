"""
iQuantum Engine: Command Line Front End
========================================
Subcommands
  • presets                         list the built-in Cartan data
  • check-cartan --cartan SRC       validate a datum, one violation per line
  • verify --suite NAME --cartan SRC [ranges] [--method exact|fast] ...
  • reduce --cartan SRC --expr TEXT [--modular]

Exit codes: 0 when every theorem-class check passes (findings never count),
1 on a theorem failure or an invalid datum, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Sequence

from dotenv import load_dotenv

from app.cartan_io import check_datum, load_datum
from app.expression_parser import ParseError, parse_expression
from config.constants import DEFAULT_LOG_LEVEL, DEFAULT_MODULAR_TRIALS, DEFAULT_SEED, LOG_LEVEL_ENV
from config.presets import PRESETS
from core import udouble
from core.cartan import CartanDatum, CartanError
from core.iqg import I_ALPHABET, IExpressionError, embed, embed_is_zero_modular
from core.ncalg import NCPoly
from core.scalars import Scalar, format_scalar
from services.basis_cache import BasisStore
from services.report_generator import FORMATS, FORMAT_TEXT, write_report
from services.suites import SUITE_IDS, SUITE_LABELS
from services.verify import E_CHOICES, METHODS, METHOD_EXACT, SuiteSpec, UnknownSuiteError, run_suites

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

# --max-m is read per suite
_MAX_M_MEANING = {
    "recursion": "largest m",
    "serre_lusztig": "steps above the threshold 1 - c",
    "higher_serre": "steps above -c_ij for n = 1",
    "oracle": "largest word degree",
}

_VERIFY_EPILOG = (
    "suites:\n"
    + "\n".join(f"  {sid:18s}{label}" for sid, label in SUITE_LABELS.items())
    + "\n\nranges (--max-m):\n"
    + "\n".join(f"  {sid:18s}{meaning}" for sid, meaning in _MAX_M_MEANING.items())
)


def _configure_logging(verbose: bool) -> None:
    level_name = "DEBUG" if verbose else (os.getenv(LOG_LEVEL_ENV) or DEFAULT_LOG_LEVEL)
    logging.basicConfig(
        level=getattr(logging, level_name.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iquantum", description="Exact verification engine for ıquantum groups")
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("presets", help="list the built-in Cartan data")

    check = sub.add_parser("check-cartan", help="validate a Cartan datum")
    check.add_argument("--cartan", required=True, help="preset name or JSON file")

    verify = sub.add_parser(
        "verify",
        help="run verification suites",
        epilog=_VERIFY_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    verify.add_argument("--suite", required=True, action="append", help=f"one of {', '.join(SUITE_IDS)}, all")
    verify.add_argument("--cartan", required=True, help="preset name or JSON file")
    verify.add_argument("--max-m", type=int, default=None, help="see ranges below")
    verify.add_argument("--max-n", type=int, default=None, help="higher_serre: largest n")
    verify.add_argument("--max-nm", type=int, default=None, help="rank1: largest N and M")
    verify.add_argument("--e", choices=sorted(E_CHOICES), default="both")
    verify.add_argument("--method", choices=METHODS, default=METHOD_EXACT)
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--trials", type=int, default=DEFAULT_MODULAR_TRIALS)
    verify.add_argument("--jobs", type=int, default=1)
    verify.add_argument("--out", default=None, help="write the report here instead of stdout")
    verify.add_argument("--format", choices=FORMATS, default=FORMAT_TEXT)
    verify.add_argument("--no-cache", action="store_true", help="do not read or write the basis cache")
    verify.add_argument(
        "--oracle-components",
        action="store_true",
        help="also cross-check every one-sign component of each embedding with the radical oracle",
    )
    verify.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS, help="debug logging")

    reduce = sub.add_parser("reduce", help="print the canonical form of an expression")
    reduce.add_argument("--cartan", required=True)
    reduce.add_argument("--expr", required=True)
    reduce.add_argument("--modular", action="store_true", help="probabilistic zero test only")
    reduce.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


# ─────────────────────────────────────────────────────────────────────────────
# SUBCOMMANDS
# ─────────────────────────────────────────────────────────────────────────────

def cmd_presets(args: argparse.Namespace) -> int:
    for name, data in PRESETS.items():
        print(f"{name:12s}  cartan={data['cartan']}  tau={data['tau']}")
    return EXIT_OK


def cmd_check_cartan(args: argparse.Namespace) -> int:
    datum, violations = check_datum(args.cartan)
    if violations:
        for v in violations:
            print(v)
        return EXIT_FAIL
    print(f"{datum.name}: valid (rank {datum.n}, tau={list(datum.tau)})")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    unknown = [s for s in args.suite if s != "all" and s not in SUITE_IDS]
    if unknown:
        raise UnknownSuiteError(f"Unknown suite: {unknown[0]} (choose from {', '.join(SUITE_IDS)}, all)")
    datum = load_datum(args.cartan)
    if not args.no_cache:
        udouble.set_basis_store(BasisStore())
    spec = SuiteSpec(
        suite=args.suite[0],
        datum=datum,
        max_m=args.max_m,
        max_n=args.max_n,
        max_nm=args.max_nm,
        e_set=E_CHOICES[args.e],
        method=args.method,
        seed=args.seed,
        trials=args.trials,
        jobs=max(1, args.jobs),
        oracle_components=args.oracle_components,
    )
    report = run_suites(list(args.suite), spec)
    write_report(report, args.format, args.out)
    return EXIT_OK if report.ok else EXIT_FAIL


def _reduce_value(datum: CartanDatum, value: Scalar | NCPoly, modular: bool, seed: int) -> str:
    if isinstance(value, Scalar):
        return format_scalar(value)
    if modular:
        if value.alphabet == I_ALPHABET:
            zero = embed_is_zero_modular(datum, value, DEFAULT_MODULAR_TRIALS, seed)
        else:
            zero = udouble.is_zero_modular(datum, value, DEFAULT_MODULAR_TRIALS, seed)
        return "0 (probable)" if zero else "nonzero"
    if value.alphabet == I_ALPHABET:
        return embed(datum, value).format()
    return udouble.reduce(datum, value).format()


def cmd_reduce(args: argparse.Namespace) -> int:
    datum = load_datum(args.cartan)
    try:
        value = parse_expression(args.expr, datum)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(_reduce_value(datum, value, args.modular, args.seed))
    return EXIT_OK


_COMMANDS = {
    "presets": cmd_presets,
    "check-cartan": cmd_check_cartan,
    "verify": cmd_verify,
    "reduce": cmd_reduce,
}


def main(argv: Sequence[str] | None = None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    _configure_logging(args.verbose)
    try:
        return _COMMANDS[args.command](args)
    except CartanError as exc:
        print(f"invalid Cartan datum: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UnknownSuiteError, IExpressionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        udouble.set_basis_store(None)
