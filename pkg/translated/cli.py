"""Command-line front end: ``translated-sums {table,eval,roots,verify}``."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable
from typing import NoReturn

from mpmath import mpf

from core.service.almost_prime_zeta import almost_zeta, almost_zeta_deriv
from core.service.prime_zeta import prime_zeta, prime_zeta_deriv
from core.service.roots import ROOT_FAMILIES, h_infinity
from core.service.suites import SUITES, run_suite
from core.service.table import build_table
from core.service.translated_sums import f_difference, f_translated
from infrastructure.configuration import Settings, load_settings
from infrastructure.monitoring import configure_logging, log_event
from interfaces.shared_types.errors import (
    BracketError,
    ConvergenceError,
    DomainError,
)
from interfaces.shared_types.numeric_context import NumericContext
from interfaces.shared_types.records import OutputRecord
from interfaces.shared_types.results import (
    AlmostPrimeZetaEval,
    EvalResult,
    PrimeZetaEval,
)
from translated import __version__
from translated.responses import (
    constant_record,
    render_records,
    render_table,
    root_record,
    suite_records,
    suite_summary,
)

LOGGER = logging.getLogger("translated.cli")

EXIT_OK = 0
EXIT_COMPUTATION = 1
EXIT_VERIFICATION = 2
EXIT_USAGE = 3

EVAL_TARGETS = ("P", "Pk", "f", "D")
ROOT_NAMES = {
    "sk": "s_k",
    "tk": "t_k",
    "spk": "s_prime_k",
    "sigma": "sigma_k",
    "hk": "h_k",
    "hinf": "h_inf",
}


class _ArgumentParser(argparse.ArgumentParser):
    """Parser whose usage errors exit with status 3."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--precision",
        type=int,
        default=30,
        help="Working precision in decimal digits (default: 30)",
    )
    common.add_argument(
        "--digits",
        type=int,
        default=6,
        help="Fractional digits shown in output (default: 6)",
    )
    common.add_argument(
        "--format", choices=("text", "csv", "json"), default="text"
    )
    common.add_argument(
        "--limit",
        type=int,
        default=None,
        help="Enumeration bound N for oracle checks (default: 10^6)",
    )
    common.add_argument(
        "--workers",
        type=int,
        default=1,
        help="Processes used to build table rows (default: 1)",
    )
    common.add_argument("--log-level", default="WARNING")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _ArgumentParser(prog="translated-sums")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    table = sub.add_parser("table", parents=[common], help="Reproduce the table")
    table.add_argument("--kmax", type=int, default=20)
    table.set_defaults(func=_cmd_table)

    evaluate = sub.add_parser("eval", parents=[common], help="Evaluate one quantity")
    evaluate.add_argument("target", choices=EVAL_TARGETS)
    evaluate.add_argument("--k", type=int)
    evaluate.add_argument("--s")
    evaluate.add_argument("--h", default="0")
    evaluate.add_argument(
        "--derivative",
        action="store_true",
        help="Also report P'(s) or P_k'(s)",
    )
    evaluate.set_defaults(func=_cmd_eval)

    roots = sub.add_parser("roots", parents=[common], help="Solve a root family")
    roots.add_argument("family", choices=tuple(ROOT_NAMES))
    roots.add_argument("--k", type=int)
    roots.set_defaults(func=_cmd_roots)

    verify = sub.add_parser("verify", parents=[common], help="Run a check suite")
    verify.add_argument("suite", choices=tuple(SUITES))
    verify.set_defaults(func=_cmd_verify)
    return parser


def _require(value: object, flag: str, target: str) -> None:
    if value is None:
        raise DomainError(f"{target} requires {flag}")


def _cmd_table(
    args: argparse.Namespace, settings: Settings, ctx: NumericContext
) -> int:
    rows = build_table(args.kmax, ctx, workers=settings.workers)
    sys.stdout.write(render_table(rows, settings))
    return EXIT_OK


def _cmd_eval(
    args: argparse.Namespace, settings: Settings, ctx: NumericContext
) -> int:
    records: list[OutputRecord] = []
    target = args.target
    if target in ("P", "Pk"):
        _require(args.s, "--s", target)
        p: PrimeZetaEval | AlmostPrimeZetaEval
        if target == "P":
            k, name = None, "P"
            evaluate_p = prime_zeta_deriv if args.derivative else prime_zeta
            p = evaluate_p(args.s, ctx)
        else:
            _require(args.k, "--k", target)
            k, name = args.k, "P_k"
            evaluate_pk = almost_zeta_deriv if args.derivative else almost_zeta
            p = evaluate_pk(args.k, args.s, ctx)
        value = EvalResult(p.value, p.err_bound)
        records.append(constant_record(f"{name}({args.s})", value, settings, k=k))
        if p.derivative is not None:
            slope = EvalResult(p.derivative, p.derivative_err or mpf(0))
            records.append(
                constant_record(f"{name}'({args.s})", slope, settings, k=k)
            )
    else:
        _require(args.k, "--k", target)
        evaluate_f: Callable[..., EvalResult]
        if target == "f":
            evaluate_f, name = f_translated, f"f(N_k, {args.h})"
        else:
            evaluate_f, name = f_difference, f"D(N_k, {args.h})"
        result = evaluate_f(args.k, args.h, ctx)
        records.append(constant_record(name, result, settings, k=args.k))
    sys.stdout.write(render_records(records, settings))
    return EXIT_OK


def _cmd_roots(
    args: argparse.Namespace, settings: Settings, ctx: NumericContext
) -> int:
    if args.family == "hinf":
        result = h_infinity(ctx)
    else:
        _require(args.k, "--k", args.family)
        result = ROOT_FAMILIES[args.family](args.k, ctx)
    record = root_record(ROOT_NAMES[args.family], result, settings)
    sys.stdout.write(render_records([record], settings))
    return EXIT_OK


def _cmd_verify(
    args: argparse.Namespace, settings: Settings, ctx: NumericContext
) -> int:
    outcome = run_suite(
        args.suite, ctx, limit=settings.limit, workers=settings.workers
    )
    sys.stdout.write(render_records(suite_records(outcome, settings), settings))
    if settings.output_format == "text":
        sys.stdout.write(suite_summary(outcome))
    return EXIT_OK if outcome.ok else EXIT_VERIFICATION


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = load_settings(args)
        configure_logging(settings.log_level)
        ctx = settings.numeric_context()
    except ValueError as exc:
        sys.stderr.write(f"translated-sums: error: {exc}\n")
        return EXIT_USAGE
    try:
        status = args.func(args, settings, ctx)
    except (BracketError, ConvergenceError) as exc:
        log_event(
            LOGGER,
            "command-failed",
            level=logging.WARNING,
            cmd=args.cmd,
            **exc.detail,
        )
        sys.stderr.write(f"translated-sums: {exc}\n")
        return EXIT_COMPUTATION
    except DomainError as exc:
        sys.stderr.write(f"translated-sums: error: {exc}\n")
        return EXIT_USAGE
    log_event(LOGGER, "command-complete", cmd=args.cmd, status=status)
    return status


if __name__ == "__main__":
    sys.exit(main())
