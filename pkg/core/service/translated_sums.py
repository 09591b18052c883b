"""Translated Erdos sums of the k-almost primes.

``f(N_k, h) = sum_{Omega(n)=k} 1/(n (log n + h)) = int_1^inf P_k(s) e^{(1-s)h} ds``.

The integral is split at ``S``: ``[1, S]`` goes to tanh-sinh quadrature and
``[S, inf)`` is bounded with ``P_k(s) <= P_k(S) 2^{-k(s-S)}``. ``P_k`` samples
are cached per quadrature node in :class:`AlmostPrimeSamples`, so repeated
evaluations at different ``h`` (root searches, whole tables) only recompute
the exponential weight.
"""

from __future__ import annotations

import dataclasses
import logging
from typing import Any

import mpmath
from mpmath import mpf

from core.service.almost_prime_zeta import almost_zeta, almost_zeta_family
from core.service.quadrature import integrate_de
from infrastructure.monitoring import increment, log_event, timed
from interfaces.shared_types.errors import ConvergenceError, DomainError
from interfaces.shared_types.numeric_context import DEFAULT_CONTEXT, NumericContext
from interfaces.shared_types.results import EvalResult, QuadratureResult

LOGGER = logging.getLogger("translated.translated_sums")

SPLIT_LADDER: tuple[int, ...] = (10, 20, 40, 80)


class AlmostPrimeSamples:
    """Cache of ``P_0(s) .. P_kmax(s)`` keyed by exact abscissa.

    Parameters
    ----------
    kmax:
        Largest order sampled; every lookup of ``k <= kmax`` at a node shares
        one family evaluation.
    ctx:
        Numeric context used for every sample.
    """

    def __init__(self, kmax: int, ctx: NumericContext = DEFAULT_CONTEXT) -> None:
        if kmax < 1:
            raise DomainError("samples need kmax >= 1", kmax=kmax)
        self.kmax = kmax
        self.ctx = ctx
        self.max_relative_err = mpf(0)
        self._store: dict[mpf, tuple[tuple[mpf, ...], tuple[mpf, ...]]] = {}
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self._store)

    def family(self, s: mpf) -> tuple[tuple[mpf, ...], tuple[mpf, ...]]:
        """Values and error bounds of ``P_0..P_kmax`` at ``s``."""
        cached = self._store.get(s)
        if cached is not None:
            self.hits += 1
            return cached
        self.misses += 1
        fam = almost_zeta_family(self.kmax, s, self.ctx)
        cached = (fam.values, fam.errors)
        self._store[s] = cached
        for value, err in zip(fam.values[1:], fam.errors[1:], strict=True):
            if value > 0:
                rel = err / value
                if rel > self.max_relative_err:
                    self.max_relative_err = rel
        return cached

    def value(self, k: int, s: mpf) -> mpf:
        if not 0 <= k <= self.kmax:
            raise DomainError("k outside the sampled family", k=k, kmax=self.kmax)
        return self.family(s)[0][k]


def _validate(k: int, h: Any, ctx: NumericContext, *, min_k: int = 1) -> mpf:
    if k < min_k:
        raise DomainError(f"k must be >= {min_k}", k=k)
    with ctx.workprec():
        hh = mpf(h)
    if hh < 0:
        raise DomainError("translation h must be non-negative", h=mpmath.nstr(hh, 15))
    return hh


def _weight(s: mpf, h: mpf) -> mpf:
    return mpmath.exp(mpmath.fsub(1, s, exact=True) * h)


def tail_bound(
    k: int, h: Any, split: Any, ctx: NumericContext = DEFAULT_CONTEXT
) -> mpf:
    """Majorant ``P_k(S) e^{(1-S)h} / (k log 2 + h)`` of the integral beyond ``S``."""

    hh = _validate(k, h, ctx)
    with ctx.workprec():
        big_s = mpf(split)
        if not big_s > 1:
            raise DomainError("split point must exceed 1", split=mpmath.nstr(big_s, 15))
        at_split = almost_zeta(k, big_s, ctx)
        bound = (at_split.value + at_split.err_bound) * _weight(big_s, hh)
        return bound / (k * mpmath.log(2) + hh)


def choose_split(
    k: int,
    h: Any,
    ctx: NumericContext = DEFAULT_CONTEXT,
    *,
    difference: bool = False,
) -> mpf:
    """Smallest ``S`` of :data:`SPLIT_LADDER` whose tail bound is below ``eps_eval/2``.

    With ``difference`` the bound covers both ``P_k`` and ``P`` tails, as
    needed by :func:`f_difference`.
    """

    for candidate in SPLIT_LADDER:
        tail = tail_bound(k, h, candidate, ctx)
        if difference:
            tail += tail_bound(1, h, candidate, ctx)
        if tail < mpf(ctx.eps_eval) / 2:
            return mpf(candidate)
    raise ConvergenceError(
        "no split point on the ladder bounds the tail",
        k=k,
        h=str(h),
        ladder=list(SPLIT_LADDER),
    )


def _resolve(
    k: int,
    h: mpf,
    ctx: NumericContext,
    samples: AlmostPrimeSamples | None,
    split: Any,
    *,
    difference: bool,
) -> tuple[AlmostPrimeSamples, mpf]:
    if samples is None:
        samples = AlmostPrimeSamples(k, ctx)
    elif samples.kmax < k:
        raise DomainError("samples do not cover k", k=k, kmax=samples.kmax)
    if split is None:
        big_s = choose_split(k, h, ctx, difference=difference)
    else:
        with ctx.workprec():
            big_s = mpf(split)
    return samples, big_s


def f_translated(
    k: int,
    h: Any,
    ctx: NumericContext = DEFAULT_CONTEXT,
    *,
    samples: AlmostPrimeSamples | None = None,
    split: Any = None,
) -> EvalResult:
    """Evaluate ``f(N_k, h)`` for ``k >= 1`` and ``h >= 0``.

    ``samples`` may be shared between calls at different ``h``; ``split``
    overrides the ladder choice (it must still bound the tail, which holds
    for any ``h`` once it holds at a smaller ``h``).
    """

    hh = _validate(k, h, ctx)
    samples, big_s = _resolve(k, hh, ctx, samples, split, difference=False)

    def integrand(s: mpf) -> mpf:
        return samples.value(k, s) * _weight(s, hh)

    with timed("f_translated", LOGGER):
        quad = integrate_de(integrand, 1, big_s, ctx)
        tail = tail_bound(k, hh, big_s, ctx)
    with ctx.workprec():
        err = quad.err_estimate + tail + samples.max_relative_err * abs(quad.value)
    increment("f_translated.evaluations")
    return EvalResult(
        value=quad.value,
        err_bound=err,
        work=_work(quad, tail, big_s),
    )


def f_difference(
    k: int,
    h: Any,
    ctx: NumericContext = DEFAULT_CONTEXT,
    *,
    samples: AlmostPrimeSamples | None = None,
    split: Any = None,
) -> EvalResult:
    """``D(h) = f(N_k, h) - f(N_1, h)`` as one integral of ``P_k - P``."""

    hh = _validate(k, h, ctx, min_k=2)
    samples, big_s = _resolve(k, hh, ctx, samples, split, difference=True)

    def integrand(s: mpf) -> mpf:
        values = samples.family(s)[0]
        return (values[k] - values[1]) * _weight(s, hh)

    def magnitude(s: mpf) -> mpf:
        values = samples.family(s)[0]
        return (values[k] + values[1]) * _weight(s, hh)

    with timed("f_difference", LOGGER):
        quad = integrate_de(integrand, 1, big_s, ctx)
        scale = integrate_de(magnitude, 1, big_s, ctx)
        tail = tail_bound(k, hh, big_s, ctx) + tail_bound(1, hh, big_s, ctx)
    with ctx.workprec():
        err = quad.err_estimate + tail + samples.max_relative_err * scale.value
    log_event(
        LOGGER,
        "difference",
        level=logging.DEBUG,
        k=k,
        h=hh,
        value=quad.value,
        err=err,
    )
    increment("f_difference.evaluations")
    return EvalResult(value=quad.value, err_bound=err, work=_work(quad, tail, big_s))


def _work(quad: QuadratureResult, tail: mpf, split: mpf) -> dict[str, Any]:
    return {
        "levels": quad.levels_used,
        "nodes": quad.nodes_used,
        "quadrature": dataclasses.replace(quad, tail_bound=tail, split_point=split),
    }


def f_trend(
    kmax: int,
    h: Any = 0,
    ctx: NumericContext = DEFAULT_CONTEXT,
    *,
    samples: AlmostPrimeSamples | None = None,
) -> list[EvalResult]:
    """``f(N_k, h)`` for ``k = 1..kmax`` on one shared set of samples."""

    hh = _validate(kmax, h, ctx)
    samples = samples if samples is not None else AlmostPrimeSamples(kmax, ctx)
    # P_k(S) <= P(S) on the ladder, so the k = 1 split serves every k.
    split = choose_split(1, hh, ctx)
    return [
        f_translated(k, hh, ctx, samples=samples, split=split)
        for k in range(1, kmax + 1)
    ]


__all__ = [
    "AlmostPrimeSamples",
    "SPLIT_LADDER",
    "choose_split",
    "f_difference",
    "f_translated",
    "f_trend",
    "tail_bound",
]
