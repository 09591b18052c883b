"""Prime zeta function ``P(s) = sum_p p^-s`` by Moebius inversion.

``P(s) = sum_m mu(m)/m * log zeta(ms)`` and ``P'(s) = sum_m mu(m) zeta'(ms)/zeta(ms)``.
Both series are truncated where the majorant ``sum_{m>M} 2^(1-ms)/m`` drops
below half the evaluation tolerance; the derivative series, whose terms lack
the ``1/m``, is bounded by ``sum_{m>M} 2^(1-ms) (log 2 + 1)``.
"""

from __future__ import annotations

import logging
import math
from typing import Any

import mpmath
from mpmath import mpf

from core.service.special_functions import (
    LogZeta,
    as_real,
    log_zeta,
    moebius_upto,
)
from infrastructure.monitoring import log_event
from interfaces.shared_types.errors import ConvergenceError, DomainError
from interfaces.shared_types.numeric_context import DEFAULT_CONTEXT, NumericContext
from interfaces.shared_types.results import PrimeZetaEval

LOGGER = logging.getLogger("translated.prime_zeta")

# Inner zeta evaluations run this much tighter than eps_eval.
INNER_TOLERANCE_FACTOR = mpf("1e-3")


def moebius_truncation(s: float | mpf, eps: float | mpf, cap: int) -> int:
    """Truncation ``M = ceil((log2(1/eps) + 4)/s) + 4`` clamped to ``cap``."""

    bits = -math.log2(float(eps))
    return min(cap, math.ceil((bits + 4) / float(s)) + 4)


def tail_majorant(s: mpf, terms: int) -> mpf:
    """Upper bound for ``sum_{m>terms} 2^(1-ms)/m``."""

    ratio = mpmath.power(2, -s)
    first = 2 * mpmath.power(ratio, terms + 1) / (terms + 1)
    return first / (1 - ratio)


def derivative_tail_majorant(s: mpf, terms: int) -> mpf:
    """Upper bound for ``sum_{m>terms} |zeta'/zeta(ms)|``.

    ``|zeta'/zeta(y)| = sum Lambda(n) n^-y <= 2^(1-y) (log 2 + 1)`` for ``y >= 2``.
    """

    ratio = mpmath.power(2, -s)
    first = 2 * mpmath.power(ratio, terms + 1) * (mpmath.log(2) + 1)
    return first / (1 - ratio)


class LogZetaMemo:
    """Memoised ``log zeta(n*s)`` for integer multipliers ``n`` of one abscissa.

    One instance serves a single evaluation tree (a prime zeta value, or a
    whole ``P_0..P_k`` family), so ``zeta(n*s)`` is computed once even when
    ``n`` arises as ``m*j`` for several pairs.
    """

    def __init__(
        self,
        s: Any,
        ctx: NumericContext = DEFAULT_CONTEXT,
        *,
        derivative: bool = False,
    ) -> None:
        self.s = as_real(s, ctx)
        if not self.s > 1:
            raise DomainError("prime zeta requires s > 1", s=mpmath.nstr(self.s, 20))
        self.ctx = ctx
        self.derivative = derivative
        self.tolerance = mpf(ctx.eps_eval) * INNER_TOLERANCE_FACTOR
        self._cache: dict[int, LogZeta] = {}

    def argument(self, n: int) -> mpf:
        if n == 1:
            return self.s
        with self.ctx.workprec():
            return n * self.s

    def __call__(self, n: int) -> LogZeta:
        hit = self._cache.get(n)
        if hit is None:
            hit = log_zeta(
                self.argument(n),
                self.ctx,
                self.tolerance,
                derivative=self.derivative,
            )
            self._cache[n] = hit
        return hit

    def __len__(self) -> int:
        return len(self._cache)


def prime_zeta_at_multiple(memo: LogZetaMemo, j: int = 1) -> PrimeZetaEval:
    """``P(j*s)`` (and ``P'(j*s)`` when ``memo.derivative``) from a shared memo."""

    ctx = memo.ctx
    with ctx.workprec():
        x = memo.argument(j)
        eps = mpf(ctx.eps_eval) * INNER_TOLERANCE_FACTOR
        terms = moebius_truncation(x, eps, ctx.max_moebius_terms)
        tail = tail_majorant(x, terms)
        if tail >= eps / 2:
            log_event(
                LOGGER,
                "moebius-cap-exhausted",
                level=logging.WARNING,
                s=x,
                terms=terms,
            )
            raise ConvergenceError(
                "Moebius series truncation cap reached before tolerance",
                s=mpmath.nstr(x, 20),
                terms=terms,
                tail=mpmath.nstr(tail, 5),
            )
        mu = moebius_upto(terms)
        value = mpf(0)
        err = tail
        d_value = mpf(0)
        d_err = derivative_tail_majorant(x, terms) if memo.derivative else tail
        for m in range(1, terms + 1):
            sign = int(mu[m])
            if sign == 0:
                continue
            lz = memo(m * j)
            value += sign * lz.log_value / m
            err += lz.log_err / m
            if memo.derivative:
                assert lz.log_derivative is not None
                assert lz.log_derivative_err is not None
                d_value += sign * lz.log_derivative
                d_err += lz.log_derivative_err
    return PrimeZetaEval(
        s=x,
        value=value,
        err_bound=err,
        terms_used=terms,
        derivative=d_value if memo.derivative else None,
        derivative_err=d_err if memo.derivative else None,
    )


def prime_zeta(s: Any, ctx: NumericContext = DEFAULT_CONTEXT) -> PrimeZetaEval:
    """Evaluate ``P(s)`` for real ``s > 1``."""

    return prime_zeta_at_multiple(LogZetaMemo(s, ctx))


def prime_zeta_deriv(s: Any, ctx: NumericContext = DEFAULT_CONTEXT) -> PrimeZetaEval:
    """Evaluate ``P(s)`` together with ``P'(s)``."""

    return prime_zeta_at_multiple(LogZetaMemo(s, ctx, derivative=True))


__all__ = [
    "INNER_TOLERANCE_FACTOR",
    "LogZetaMemo",
    "moebius_truncation",
    "prime_zeta",
    "prime_zeta_at_multiple",
    "prime_zeta_deriv",
    "tail_majorant",
]
