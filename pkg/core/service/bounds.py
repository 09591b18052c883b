"""The constant alpha, the explicit lower bounds ell_k and the chain
``e^{-0.01 h_2} ell_20 > 0.98 > 0.91 > f(N_1, h_2)``.
"""

from __future__ import annotations

import functools
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

import mpmath
from mpmath import mpf

from core.service.prime_zeta import prime_zeta, prime_zeta_deriv, tail_majorant
from core.service.quadrature import integrate_de
from core.service.roots import h_k
from core.service.special_functions import upper_incomplete_gamma_int
from core.service.translated_sums import (
    AlmostPrimeSamples,
    choose_split,
    f_difference,
    f_translated,
)
from infrastructure.monitoring import log_event, timed
from interfaces.shared_types.errors import ConvergenceError, DomainError
from interfaces.shared_types.numeric_context import DEFAULT_CONTEXT, NumericContext
from interfaces.shared_types.results import EvalResult
from interfaces.shared_types.table import BoundsReport, ChainStep, TableRow

LOGGER = logging.getLogger("translated.bounds")

ALPHA_FLOOR = "0.729"
ELL_MIN_K = 9
PSK_MAX_K = 8
PSK_UPPER = "1.01"
CHAIN_FIRST = "0.98"
CHAIN_SECOND = "0.91"
SHIFT_WIDTH = "0.01"
ENVELOPE_SLOPE = "1.4"
ENVELOPE_GRID: tuple[str, ...] = ("1.001", "1.01", "1.1", "1.25", "1.5", "1.75", "2")
TAYLOR_GRID: tuple[str, ...] = ("1.0001", "1.001", "1.005", "1.01")
ELL_REPORT_RANGE = range(20, 31)
SPOT_CHECK_KS: tuple[int, ...] = (21, 25, 30)
PUBLISHED_H2 = "1.04466"
_MAX_ALPHA_TERMS = 512


def alpha(
    ctx: NumericContext = DEFAULT_CONTEXT, *, terms: int | None = None
) -> EvalResult:
    """``alpha = exp(-sum_{m>=2} P(m)/m)``.

    Without ``terms`` the series stops at the first ``M`` whose tail
    majorant ``sum_{m>M} 2^(1-m)/m`` is below ``eps_eval``.
    """

    with ctx.workprec():
        if terms is None:
            terms = 2
            while tail_majorant(mpf(1), terms) >= ctx.eps_eval:
                terms += 1
                if terms > _MAX_ALPHA_TERMS:
                    raise ConvergenceError(
                        "alpha series cap exhausted", cap=_MAX_ALPHA_TERMS
                    )
        elif terms < 2:
            raise DomainError("alpha needs at least two terms", terms=terms)
        tail = tail_majorant(mpf(1), terms)
        total = mpf(0)
        err = tail
        for m in range(2, terms + 1):
            pm = prime_zeta(m, ctx)
            total += pm.value / m
            err += pm.err_bound / m
        value = mpmath.exp(-total)
    return EvalResult(value=value, err_bound=value * err, work={"terms": terms})


@dataclass(frozen=True, slots=True)
class _EllIngredients:
    alpha: mpf
    p: dict[int, mpf]
    dp: dict[int, mpf]


@functools.lru_cache(maxsize=8)
def _ell_ingredients(ctx: NumericContext) -> _EllIngredients:
    a = alpha(ctx).value
    evals = {j: prime_zeta_deriv(j, ctx) for j in range(2, 7)}
    return _EllIngredients(
        alpha=a,
        p={j: e.value for j, e in evals.items()},
        dp={j: e.derivative for j, e in evals.items()},  # type: ignore[misc]
    )


def _ell(ingredients: _EllIngredients, k: int | None) -> mpf:
    """``ell_k``; ``k=None`` drops the derivative terms (the limit in ``k``)."""

    a, p, dp = ingredients.alpha, ingredients.p, ingredients.dp

    def shrink(power: int) -> mpf:
        return mpf(0) if k is None else a / mpmath.ldexp(mpf(1), k - power)

    total = mpf(1)
    for j in range(2, 7):
        total += (p[j] + shrink(j) * dp[j]) / j
    total += (p[2] ** 2 + shrink(4) * p[2] * dp[2]) / 8
    for j in range(3, 7):
        cross = dp[2] * p[j] + p[2] * dp[j]
        total += (p[2] * p[j] + shrink(j + 1) * cross) / (2 * j)
    return mpf(ALPHA_FLOOR) * total


def ell_k(k: int, ctx: NumericContext = DEFAULT_CONTEXT) -> mpf:
    """Explicit lower bound ``ell_k`` with the rounded-down prefactor ``0.729``."""

    if k < ELL_MIN_K:
        raise DomainError(f"ell_k is defined for k >= {ELL_MIN_K}", k=k)
    with ctx.workprec():
        return _ell(_ell_ingredients(ctx), k)


def ell_limit(ctx: NumericContext = DEFAULT_CONTEXT) -> mpf:
    """``lim_{k->inf} ell_k``."""

    with ctx.workprec():
        return _ell(_ell_ingredients(ctx), None)


def _h2(ctx: NumericContext, h2: Any, samples: AlmostPrimeSamples | None) -> mpf:
    if h2 is not None:
        with ctx.workprec():
            return mpf(h2)
    return h_k(2, ctx, samples=samples).root


def verify_theorem2_chain(
    ctx: NumericContext = DEFAULT_CONTEXT,
    *,
    h2: Any = None,
    rows: Sequence[TableRow] | None = None,
    samples: AlmostPrimeSamples | None = None,
) -> BoundsReport:
    """Evaluate every inequality of the chain at ``h = h_2``.

    The chain runs at the computed root ``h_2``; ``f(N_1, 1.04466)`` at the
    rounded ``h_2`` is carried alongside, since the two differ in the sixth
    place. ``D_k(h_2) = f(N_k, h_2) - f(N_1, h_2)`` is evaluated for ``k = 2..20``;
    at ``k = 2`` it vanishes up to the root tolerance, so only
    ``D_2(h_2) >= -(eps_root + err)`` is required. With ``rows`` the table
    route ``h_k <= h_2`` is checked as well.
    """

    if samples is None or samples.kmax < 20:
        samples = AlmostPrimeSamples(20, ctx)
    with timed("bounds.theorem2", LOGGER):
        h = _h2(ctx, h2, samples)
        split = choose_split(2, 0, ctx, difference=True)
        ell = {k: ell_k(k, ctx) for k in ELL_REPORT_RANGE}
        f1 = f_translated(1, h, ctx, samples=samples, split=split)
        f1_published = f_translated(
            1, PUBLISHED_H2, ctx, samples=samples, split=split
        )
        a = alpha(ctx).value
        with ctx.workprec():
            first, second = mpf(CHAIN_FIRST), mpf(CHAIN_SECOND)
            shifted = mpmath.exp(-mpf(SHIFT_WIDTH) * h) * ell[20]
            steps = [
                ChainStep("exp(-0.01 h_2) ell_20 > 0.98", shifted, first),
                ChainStep("0.98 > 0.91", first, second),
                ChainStep("0.91 > f(N_1, h_2)", second, f1.value),
            ]
            differences: dict[int, mpf] = {}
            for k in range(2, 21):
                diff = f_difference(k, h, ctx, samples=samples, split=split)
                differences[k] = diff.value
                if k == 2:
                    slack = mpf(ctx.eps_root) + diff.err_bound
                    steps.append(
                        ChainStep("D_2(h_2) >= -tolerance", diff.value + slack, mpf(0))
                    )
                else:
                    steps.append(ChainStep(f"D_{k}(h_2) > 0", diff.value, mpf(0)))
            for row in rows or ():
                if row.k > 2:
                    steps.append(ChainStep(f"h_2 > h_{row.k}", h, row.h_k))
    chain_ok = all(step.holds for step in steps)
    margin = min(step.margin for step in steps)
    report = BoundsReport(
        alpha=a,
        h2=h,
        ell=ell,
        f1_h2=f1.value,
        f1_published_h2=f1_published.value,
        steps=tuple(steps),
        differences=differences,
        chain_ok=chain_ok,
        margin=margin,
    )
    log_event(LOGGER, "theorem2-chain", ok=chain_ok, margin=margin, h2=h)
    return report


def psk_integral(
    k: int,
    ctx: NumericContext = DEFAULT_CONTEXT,
    *,
    samples: AlmostPrimeSamples | None = None,
) -> EvalResult:
    """``int_1^1.01 P(s)^k ds`` by tanh-sinh quadrature (``1 <= k <= 8``)."""

    if not 1 <= k <= PSK_MAX_K:
        raise DomainError(
            f"direct quadrature is limited to 1 <= k <= {PSK_MAX_K}", k=k
        )
    samples = samples if samples is not None else AlmostPrimeSamples(1, ctx)

    def integrand(s: mpf) -> mpf:
        return samples.value(1, s) ** k

    quad = integrate_de(integrand, 1, PSK_UPPER, ctx)
    with ctx.workprec():
        err = quad.err_estimate + k * samples.max_relative_err * quad.value
    return EvalResult(
        value=quad.value, err_bound=err, work={"levels": quad.levels_used}
    )


def verify_psk_bound(
    k: int,
    ctx: NumericContext = DEFAULT_CONTEXT,
    *,
    samples: AlmostPrimeSamples | None = None,
) -> bool:
    """``int_1^1.01 P(s)^k ds > 0.729 k!`` by direct quadrature."""

    result = psk_integral(k, ctx, samples=samples)
    with ctx.workprec():
        floor = mpf(ALPHA_FLOOR) * math.factorial(k)
        holds = bool(result.value - result.err_bound > floor)
    log_event(LOGGER, "psk-bound", k=k, integral=result.value, holds=holds)
    return holds


def gamma_step_ratio(k: int, ctx: NumericContext = DEFAULT_CONTEXT) -> mpf:
    """``alpha Gamma(k+1, 4) / k!``, compared against ``0.729`` for large ``k``."""

    a = alpha(ctx).value
    with ctx.workprec():
        return a * upper_incomplete_gamma_int(k, 4, ctx) / mpmath.factorial(k)


def _grid(points: Iterable[Any], ctx: NumericContext) -> list[mpf]:
    with ctx.workprec():
        return [mpf(point) for point in points]


def verify_taylor_step(
    ctx: NumericContext = DEFAULT_CONTEXT, grid: Iterable[Any] = TAYLOR_GRID
) -> tuple[ChainStep, ...]:
    """Tangent-line step ``P(js) > P(j) + j P'(j) (s-1)`` for ``j = 2..6``.

    This is the convexity bound for ``s -> P(js)``, whose slope at ``s = 1``
    is ``j P'(j)``.
    """

    ingredients = _ell_ingredients(ctx)
    steps = []
    for s in _grid(grid, ctx):
        for j in range(2, 7):
            with ctx.workprec():
                js = j * s
            lhs = prime_zeta(js, ctx).value
            with ctx.workprec():
                rhs = ingredients.p[j] + j * ingredients.dp[j] * (s - 1)
            steps.append(ChainStep(f"P({j}s) at s={mpmath.nstr(s, 6)}", lhs, rhs))
    return tuple(steps)


def envelope_check(
    grid: Iterable[Any] = ENVELOPE_GRID, ctx: NumericContext = DEFAULT_CONTEXT
) -> tuple[ChainStep, ...]:
    """``0 < P(s) - log(alpha/(s-1)) < 1.4(s-1)`` on ``grid``."""

    a = alpha(ctx).value
    steps = []
    for s in _grid(grid, ctx):
        p = prime_zeta(s, ctx).value
        with ctx.workprec():
            gap = p - mpmath.log(a / (s - 1))
            label = mpmath.nstr(s, 6)
            steps.append(ChainStep(f"envelope lower at s={label}", gap, mpf(0)))
            upper = mpf(ENVELOPE_SLOPE) * (s - 1)
            steps.append(ChainStep(f"envelope upper at s={label}", upper, gap))
    return tuple(steps)


def chain_spot_check(
    ks: Iterable[int] = SPOT_CHECK_KS,
    ctx: NumericContext = DEFAULT_CONTEXT,
    *,
    h2: Any = None,
) -> tuple[ChainStep, ...]:
    """Direct ``f(N_k, h_2) > e^{-0.01 h_2} ell_k`` for ``k > 20``."""

    ks = tuple(ks)
    if not ks or min(ks) <= 20:
        raise DomainError("spot checks cover k > 20 only", ks=list(ks))
    h = _h2(ctx, h2, None)
    samples = AlmostPrimeSamples(max(ks), ctx)
    split = choose_split(1, h, ctx)
    steps = []
    for k in ks:
        value = f_translated(k, h, ctx, samples=samples, split=split)
        with ctx.workprec():
            bound = mpmath.exp(-mpf(SHIFT_WIDTH) * h) * ell_k(k, ctx)
        label = f"f(N_{k}, h_2) > exp(-0.01 h_2) ell_{k}"
        steps.append(ChainStep(label, value.value, bound))
    return tuple(steps)


__all__ = [
    "ENVELOPE_GRID",
    "SPOT_CHECK_KS",
    "alpha",
    "chain_spot_check",
    "ell_k",
    "ell_limit",
    "envelope_check",
    "gamma_step_ratio",
    "psk_integral",
    "verify_psk_bound",
    "verify_taylor_step",
    "verify_theorem2_chain",
]
