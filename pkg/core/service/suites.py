"""Verification suites behind ``translated-sums verify``.

Each suite returns a :class:`SuiteOutcome` whose checks are ``pass``,
``fail`` or ``report``; only ``fail`` lines make the suite fail.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Sequence

import mpmath
from mpmath import mpf

from core.service.almost_prime_zeta import almost_zeta, almost_zeta_partition
from core.service.bounds import (
    ALPHA_FLOOR,
    PUBLISHED_H2,
    alpha,
    chain_spot_check,
    ell_limit,
    envelope_check,
    gamma_step_ratio,
    verify_taylor_step,
    verify_theorem2_chain,
)
from core.service.enumerator import (
    big_omega,
    enumerate_almost_primes,
    partial_f,
    partial_zeta,
)
from core.service.prime_zeta import prime_zeta
from core.service.roots import h_infinity
from core.service.table import build_table, check_orderings
from core.service.translated_sums import AlmostPrimeSamples, f_trend
from infrastructure.monitoring import log_event, timed
from interfaces.shared_types.errors import DomainError
from interfaces.shared_types.numeric_context import DEFAULT_CONTEXT, NumericContext
from interfaces.shared_types.table import (
    ChainStep,
    Status,
    SuiteCheck,
    SuiteOutcome,
    TableRow,
)

LOGGER = logging.getLogger("translated.suites")

DEFAULT_ORACLE_LIMIT = 10**6
ORACLE_S_GRID: tuple[str, ...] = ("1.5", "2", "3")
ORACLE_K_RANGE = range(2, 7)
ORACLE_KS_GRID: tuple[str, ...] = ("1.5", "2")
COUNT_CHECK_LIMIT = 10**4
GAMMA_STEP_KS = range(20, 31)
ZHANG_KMAX = 20
# Relative rounding allowance for double-precision oracle sums.
FLOAT_SLACK = mpf("1e-12")


def _status(holds: bool) -> Status:
    return "pass" if holds else "fail"


def _from_steps(steps: Iterable[ChainStep]) -> list[SuiteCheck]:
    return [
        SuiteCheck(name=step.name, value=step.margin, status=_status(step.holds))
        for step in steps
    ]


def _finish(suite: str, checks: Sequence[SuiteCheck]) -> SuiteOutcome:
    outcome = SuiteOutcome(suite, tuple(checks))
    log_event(
        LOGGER,
        "suite-complete",
        suite=suite,
        ok=outcome.ok,
        passed=outcome.count("pass"),
        failed=outcome.count("fail"),
        reported=outcome.count("report"),
    )
    return outcome


def orderings_suite(
    ctx: NumericContext = DEFAULT_CONTEXT,
    *,
    workers: int = 1,
    rows: Sequence[TableRow] | None = None,
) -> SuiteOutcome:
    """``s_k < sigma_k < t_k`` and ``t_k < s'_k`` over the full table."""

    if rows is None:
        rows = build_table(20, ctx, workers=workers)
    report = check_orderings(rows)
    by_k = {row.k: row for row in rows}
    checks = []
    for check in report.checks:
        row = by_k[check.k]
        with ctx.workprec():
            margin = row.s_prime_k - row.t_k
        checks.append(
            SuiteCheck(name="orderings", value=margin, status=check.status, k=check.k)
        )
    return _finish("orderings", checks)


def theorem2_suite(
    ctx: NumericContext = DEFAULT_CONTEXT,
    *,
    rows: Sequence[TableRow] | None = None,
    samples: AlmostPrimeSamples | None = None,
) -> SuiteOutcome:
    """The minimisation chain at ``h_2`` with its supporting constants."""

    with timed("suites.theorem2", LOGGER):
        report = verify_theorem2_chain(ctx, rows=rows, samples=samples)
        checks = [
            SuiteCheck("alpha", report.alpha, "report"),
            SuiteCheck("h_2", report.h2, "report"),
            SuiteCheck("f(N_1, h_2)", report.f1_h2, "report"),
            SuiteCheck(
                f"f(N_1, {PUBLISHED_H2})", report.f1_published_h2, "report"
            ),
            SuiteCheck("ell_inf", ell_limit(ctx), "report"),
        ]
        checks += [
            SuiteCheck("ell_k", value, "report", k=k)
            for k, value in report.ell.items()
        ]
        checks += _from_steps(report.steps)
        for k in GAMMA_STEP_KS:
            ratio = gamma_step_ratio(k, ctx)
            with ctx.workprec():
                margin = ratio - mpf(ALPHA_FLOOR)
            name = "alpha Gamma(k+1,4)/k! > 0.729"
            checks.append(SuiteCheck(name, margin, _status(margin > 0), k=k))
        checks += _from_steps(chain_spot_check(ctx=ctx, h2=report.h2))
    return _finish("theorem2", checks)


def envelope_suite(ctx: NumericContext = DEFAULT_CONTEXT) -> SuiteOutcome:
    """Envelope of ``P`` near 1 and the tangent steps of ``P(js)``."""

    a = alpha(ctx)
    checks = [SuiteCheck("alpha", a.value, "report", err_bound=a.err_bound)]
    checks += _from_steps(envelope_check(ctx=ctx))
    checks += _from_steps(verify_taylor_step(ctx))
    return _finish("envelope", checks)


def _within(gap: mpf, lower: mpf, upper: mpf) -> Status:
    return _status(bool(lower <= gap <= upper))


def oracle_suite(
    ctx: NumericContext = DEFAULT_CONTEXT, *, limit: int = DEFAULT_ORACLE_LIMIT
) -> SuiteOutcome:
    """Analytic values against brute-force enumeration up to ``limit``."""

    checks: list[SuiteCheck] = []
    with timed("suites.oracle", LOGGER):
        for s in ORACLE_S_GRID:
            full = prime_zeta(s, ctx)
            part = partial_zeta(1, s, limit, ctx)
            with ctx.workprec():
                gap = full.value - part.value
                slack = full.err_bound + FLOAT_SLACK * part.value
                status = _within(gap, -slack, part.err_bound + slack)
            checks.append(SuiteCheck(f"P({s}) - partial", gap, status, k=1))
        for k in ORACLE_K_RANGE:
            for s in ORACLE_KS_GRID:
                rec = almost_zeta(k, s, ctx)
                alt = almost_zeta_partition(k, s, ctx)
                part = partial_zeta(k, s, limit, ctx)
                with ctx.workprec():
                    tolerance = mpf(10) ** -(ctx.digits - 5)
                    drift = abs(rec.value - alt.value)
                    gap = rec.value - part.value
                    slack = rec.err_bound + FLOAT_SLACK * part.value
                checks.append(
                    SuiteCheck(
                        f"recursion vs partitions at s={s}",
                        drift,
                        _status(drift <= tolerance),
                        k=k,
                    )
                )
                checks.append(
                    SuiteCheck(
                        f"P_k({s}) - partial",
                        gap,
                        _within(gap, -slack, part.err_bound + slack),
                        k=k,
                    )
                )
        stream = enumerate_almost_primes(2, COUNT_CHECK_LIMIT)
        scanned = sum(
            1 for n in range(2, COUNT_CHECK_LIMIT + 1) if big_omega(n) == 2
        )
        checks.append(
            SuiteCheck(
                "stream count vs Omega scan",
                mpf(len(stream) - scanned),
                _status(len(stream) == scanned),
                k=2,
            )
        )
        f1 = f_trend(1, 0, ctx)[0]
        part_f = partial_f(1, 0, limit, ctx)
        with ctx.workprec():
            gap = f1.value - part_f.value
        checks.append(SuiteCheck("f(N_1) - partial", gap, _status(gap > 0), k=1))
        checks.append(SuiteCheck("partial f(N_1)", part_f.value, "report", k=1))
    return _finish("oracle", checks)


def zhang_suite(ctx: NumericContext = DEFAULT_CONTEXT) -> SuiteOutcome:
    """``f(N_1) > f(N_k)`` for ``k <= 20`` and the drift of ``f(N_k)`` to 1."""

    with timed("suites.zhang", LOGGER):
        samples = AlmostPrimeSamples(ZHANG_KMAX, ctx)
        trend = f_trend(ZHANG_KMAX, 0, ctx, samples=samples)
        first = trend[0]
        checks = [
            SuiteCheck("f(N_1)", first.value, "report", k=1, err_bound=first.err_bound)
        ]
        for k, result in enumerate(trend[1:], start=2):
            with ctx.workprec():
                margin = first.value - result.value
                slack = first.err_bound + result.err_bound
            checks.append(
                SuiteCheck("f(N_1) > f(N_k)", margin, _status(margin > slack), k=k)
            )
            checks.append(
                SuiteCheck(
                    "f(N_k)", result.value, "report", k=k, err_bound=result.err_bound
                )
            )
        with ctx.workprec():
            drift = trend[-1].value - 1
        checks.append(SuiteCheck("f(N_20) - 1", drift, "report", k=ZHANG_KMAX))
        h_inf = h_infinity(ctx, samples=samples)
        checks.append(SuiteCheck("h_inf", h_inf.root, "report"))
    log_event(LOGGER, "zhang-trend", last=mpmath.nstr(trend[-1].value, 10))
    return _finish("zhang", checks)


SUITES: dict[str, Callable[..., SuiteOutcome]] = {
    "orderings": orderings_suite,
    "theorem2": theorem2_suite,
    "envelope": envelope_suite,
    "oracle": oracle_suite,
    "zhang": zhang_suite,
}


def run_suite(
    name: str,
    ctx: NumericContext = DEFAULT_CONTEXT,
    *,
    limit: int | None = None,
    workers: int = 1,
) -> SuiteOutcome:
    """Dispatch ``name`` with the options it understands."""

    if name not in SUITES:
        raise DomainError("unknown verification suite", suite=name)
    if name == "orderings":
        return orderings_suite(ctx, workers=workers)
    if name == "oracle":
        return oracle_suite(ctx, limit=limit or DEFAULT_ORACLE_LIMIT)
    return SUITES[name](ctx)


__all__ = [
    "DEFAULT_ORACLE_LIMIT",
    "SUITES",
    "envelope_suite",
    "oracle_suite",
    "orderings_suite",
    "run_suite",
    "theorem2_suite",
    "zhang_suite",
]
