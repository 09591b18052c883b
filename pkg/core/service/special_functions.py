"""Analytic and arithmetic kernels.

Real ``zeta(s)`` and ``zeta'(s)`` for ``s > 1`` by Euler-Maclaurin summation,
exact Bernoulli numbers, Moebius values and primes by sieve, and the upper
incomplete gamma function of integer order in closed form.

Arguments close to ``s = 1`` are evaluated with extra binary precision
(about ``-log2(s - 1)`` bits), so callers may pass abscissae such as
``1 + 10**-40`` as exact mpmath numbers.
"""

from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import mpmath
import numpy as np
import numpy.typing as npt
from mpmath import mpf

from infrastructure.monitoring import log_event
from interfaces.shared_types.errors import ConvergenceError, DomainError
from interfaces.shared_types.numeric_context import DEFAULT_CONTEXT, NumericContext
from interfaces.shared_types.results import EvalResult

LOGGER = logging.getLogger("translated.special_functions")

_BERNOULLI_BLOCK = 32


@dataclass(frozen=True, slots=True)
class BernoulliCache:
    """Even-index Bernoulli numbers ``B_2, B_4, ...`` as exact rationals."""

    values: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.values)

    def b2j(self, j: int) -> Fraction:
        """Return ``B_{2j}`` for ``j >= 1``."""
        return self.values[j - 1]

    def em_coefficient(self, j: int) -> Fraction:
        """Return ``B_{2j} / (2j)!``, the Euler-Maclaurin weight."""
        return self.values[j - 1] / math.factorial(2 * j)


@functools.cache
def _bernoulli_block(size: int) -> tuple[Fraction, ...]:
    # B_0..B_size via sum_{j<=m} C(m+1, j) B_j = 0
    table = [Fraction(1)]
    for m in range(1, size + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * table[j]
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli_numbers(count: int) -> BernoulliCache:
    """Return the first ``count`` even-index Bernoulli numbers."""

    if count < 0:
        raise DomainError("count must be non-negative", count=count)
    blocks = max(1, math.ceil(2 * count / _BERNOULLI_BLOCK))
    table = _bernoulli_block(blocks * _BERNOULLI_BLOCK)
    return BernoulliCache(tuple(table[2 * j] for j in range(1, count + 1)))


@functools.lru_cache(maxsize=64)
def _em_weights(count: int, prec: int) -> tuple[mpf, ...]:
    cache = bernoulli_numbers(count)
    with mpmath.workprec(prec):
        return tuple(
            mpf(c.numerator) / c.denominator
            for c in (cache.em_coefficient(j) for j in range(1, count + 1))
        )


@functools.lru_cache(maxsize=64)
def _log_table(size: int, prec: int) -> tuple[mpf, ...]:
    with mpmath.workprec(prec):
        return (mpf(0), mpf(0)) + tuple(mpmath.log(n) for n in range(2, size))


def as_real(x: Any, ctx: NumericContext = DEFAULT_CONTEXT) -> mpf:
    """Convert ``x`` to an mpmath number without rounding existing mpf values."""

    if isinstance(x, mpf):
        return x
    with ctx.workprec():
        return mpf(x)


def near_one_bits(s: mpf) -> int:
    """Extra bits needed to resolve ``s - 1`` when ``s`` is close to 1."""

    u = mpmath.fsub(s, 1, exact=True)
    if u <= 0 or u >= 1:
        return 0
    return max(0, -int(mpmath.mag(u)))


def _require_above_one(s: mpf, op: str) -> None:
    if not s > 1:
        raise DomainError(f"{op} requires s > 1", s=mpmath.nstr(s, 20))


@dataclass(slots=True)
class _ZetaTerms:
    minus_one: mpf
    err: mpf
    derivative: mpf | None
    derivative_err: mpf | None
    nodes: int
    bernoulli_terms: int


def _euler_maclaurin(
    s: mpf,
    ctx: NumericContext,
    rel_tol: mpf,
    *,
    derivative: bool,
) -> _ZetaTerms:
    """``zeta(s) - 1`` (and ``zeta'(s)``) at the current mpmath precision.

    The direct sum starts at n = 2 so that ``zeta(s) - 1`` keeps full relative
    accuracy for large ``s``. The remainder after J corrections is bounded by
    the first omitted correction term (real ``s``).
    """

    prec = mpmath.mp.prec
    target = rel_tol * mpmath.ldexp(mpf(1), -int(mpmath.ceil(s)))
    d_target = target * mpmath.log(2)

    # Smallest N for which the J = 0 remainder s N^{-s-1}/12 is already small;
    # the derivative remainder carries an extra log N.
    n_direct = mpmath.exp((mpmath.log(s / 12) - mpmath.log(target)) / (s + 1))
    if derivative:
        for _ in range(3):
            log_log = mpmath.log(mpmath.log(max(n_direct, mpf(2))))
            n_direct = mpmath.exp(
                (mpmath.log(s / 12) + log_log - mpmath.log(d_target)) / (s + 1)
            )
    big_n = max(2, int(min(n_direct, ctx.zeta_em_nodes)) + 1)
    first = s * mpmath.power(big_n, -s - 1) / 12
    d_first = first * abs(1 / s - mpmath.log(big_n))
    if first >= target or (derivative and d_first >= d_target):
        # Corrections shrink only while (s + 2j) / (2 pi N) < 1.
        n_shrink = (s + 2 * ctx.zeta_em_bernoulli) / (2 * mpmath.pi)
        big_n = max(big_n, int(n_shrink) + 1)
    big_n = min(big_n, ctx.zeta_em_nodes)

    logs = _log_table(big_n + 1, prec)
    total = mpf(0)
    d_total = mpf(0)
    for n in range(2, big_n):
        term = mpmath.exp(-s * logs[n])
        total += term
        if derivative:
            d_total -= logs[n] * term

    log_n = logs[big_n]
    sm1 = s - 1
    n_pow = mpmath.exp(-s * log_n)
    tail = big_n * n_pow / sm1
    half = n_pow / 2
    total += tail + half
    if derivative:
        d_total += -log_n * tail - tail / sm1 - log_n * half

    weights = _em_weights(ctx.zeta_em_bernoulli, prec)
    rising = s
    harmonic = 1 / s
    power = n_pow / big_n
    n_sq = mpf(big_n) ** 2
    err: mpf | None = None
    d_err: mpf | None = None
    used = 0
    for j in range(1, ctx.zeta_em_bernoulli + 1):
        term = weights[j - 1] * rising * power
        d_term = term * (harmonic - log_n) if derivative else mpf(0)
        if abs(term) < target and (not derivative or abs(d_term) < d_target):
            err = abs(term)
            d_err = 2 * abs(d_term) if derivative else None
            break
        total += term
        d_total += d_term
        used = j
        a, b = s + 2 * j - 1, s + 2 * j
        rising *= a * b
        harmonic += 1 / a + 1 / b
        power /= n_sq
    if err is None:
        log_event(
            LOGGER,
            "zeta-cap-exhausted",
            level=logging.WARNING,
            s=s,
            nodes=big_n,
            bernoulli_terms=ctx.zeta_em_bernoulli,
        )
        raise ConvergenceError(
            "Euler-Maclaurin correction terms did not reach tolerance",
            s=mpmath.nstr(s, 20),
            bernoulli_terms=ctx.zeta_em_bernoulli,
        )
    return _ZetaTerms(
        minus_one=total,
        err=err,
        derivative=d_total if derivative else None,
        derivative_err=d_err,
        nodes=big_n,
        bernoulli_terms=used,
    )


def zeta(s: Any, ctx: NumericContext = DEFAULT_CONTEXT) -> EvalResult:
    """Riemann zeta on the real ray ``s > 1`` by Euler-Maclaurin summation."""

    s = as_real(s, ctx)
    _require_above_one(s, "zeta")
    with mpmath.workprec(ctx.prec + near_one_bits(s)):
        terms = _euler_maclaurin(s, ctx, ctx.working_tol, derivative=False)
        value = 1 + terms.minus_one
    return EvalResult(
        value=value,
        err_bound=terms.err,
        work={"nodes": terms.nodes, "bernoulli_terms": terms.bernoulli_terms},
    )


def zeta_prime(s: Any, ctx: NumericContext = DEFAULT_CONTEXT) -> EvalResult:
    """``zeta'(s)`` for ``s > 1`` by the term-wise differentiated expansion."""

    s = as_real(s, ctx)
    _require_above_one(s, "zeta_prime")
    with mpmath.workprec(ctx.prec + near_one_bits(s)):
        terms = _euler_maclaurin(s, ctx, ctx.working_tol, derivative=True)
    assert terms.derivative is not None and terms.derivative_err is not None
    return EvalResult(
        value=terms.derivative,
        err_bound=terms.derivative_err,
        work={"nodes": terms.nodes, "bernoulli_terms": terms.bernoulli_terms},
    )


@dataclass(frozen=True, slots=True)
class LogZeta:
    """``log zeta(x)`` and ``zeta'(x)/zeta(x)`` with absolute error bounds."""

    log_value: mpf
    log_err: mpf
    log_derivative: mpf | None = None
    log_derivative_err: mpf | None = None


def log_zeta(
    x: mpf,
    ctx: NumericContext,
    rel_tol: mpf,
    *,
    derivative: bool = False,
) -> LogZeta:
    """Logarithm (and logarithmic derivative) of zeta for ``x > 1``."""

    _require_above_one(x, "log_zeta")
    with mpmath.workprec(ctx.prec + near_one_bits(x)):
        terms = _euler_maclaurin(x, ctx, rel_tol, derivative=derivative)
        value = 1 + terms.minus_one
        log_value = mpmath.log1p(terms.minus_one)
        log_err = terms.err / value
        if not derivative:
            return LogZeta(+log_value, +log_err)
        assert terms.derivative is not None and terms.derivative_err is not None
        ratio = terms.derivative / value
        ratio_err = terms.derivative_err / value + abs(ratio) * log_err
        return LogZeta(+log_value, +log_err, +ratio, +ratio_err)


@functools.lru_cache(maxsize=8)
def primes_upto(n: int) -> npt.NDArray[np.int64]:
    """Primes ``<= n`` by the sieve of Eratosthenes (read-only array)."""

    if n < 2:
        raise DomainError("primes_upto requires N >= 2", n=n)
    is_prime = np.ones(n + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    primes = np.flatnonzero(is_prime).astype(np.int64)
    primes.flags.writeable = False
    return primes


@functools.lru_cache(maxsize=8)
def moebius_upto(m: int) -> npt.NDArray[np.int8]:
    """Moebius values indexed by ``n`` for ``0 <= n <= m`` (entry 0 is 0)."""

    if m < 1:
        raise DomainError("moebius_upto requires M >= 1", m=m)
    mu = np.ones(m + 1, dtype=np.int8)
    mu[0] = 0
    if m >= 2:
        for p in primes_upto(m).tolist():
            mu[p::p] *= -1
            mu[p * p :: p * p] = 0
    mu.flags.writeable = False
    return mu


def upper_incomplete_gamma_int(
    k: int, x: Any, ctx: NumericContext = DEFAULT_CONTEXT
) -> mpf:
    """``Gamma(k+1, x) = k! e^{-x} sum_{j<=k} x^j/j!`` for integer ``k >= 0``."""

    if k < 0:
        raise DomainError("order must be a non-negative integer", k=k)
    with ctx.workprec():
        x = mpf(x)
        if x < 0:
            raise DomainError("x must be non-negative", x=mpmath.nstr(x, 20))
        term = mpf(1)
        total = mpf(1)
        for j in range(1, k + 1):
            term = term * x / j
            total += term
        return mpmath.factorial(k) * mpmath.exp(-x) * total


__all__ = [
    "BernoulliCache",
    "LogZeta",
    "as_real",
    "bernoulli_numbers",
    "log_zeta",
    "moebius_upto",
    "near_one_bits",
    "primes_upto",
    "upper_incomplete_gamma_int",
    "zeta",
    "zeta_prime",
]
