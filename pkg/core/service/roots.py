"""Bracketed root finding and the six families of table constants.

``find_root`` runs the Illinois variant of regula falsi on a sign-changing
bracket, falling back to bisection whenever the bracket stops shrinking.
The s-families are seeded at ``1 + 1/k**3`` and the bracket is grown until
it changes sign; ``h_k`` and ``h_inf`` are solved directly in ``h`` on
``[0, 2]``.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from typing import Any

import mpmath
from mpmath import mpf

from core.service.almost_prime_zeta import almost_zeta_family
from core.service.prime_zeta import prime_zeta
from core.service.translated_sums import (
    AlmostPrimeSamples,
    choose_split,
    f_difference,
    f_translated,
)
from infrastructure.monitoring import increment, log_event
from interfaces.protocols import RealFunction
from interfaces.shared_types.errors import BracketError, ConvergenceError, DomainError
from interfaces.shared_types.numeric_context import DEFAULT_CONTEXT, NumericContext
from interfaces.shared_types.results import RootResult

LOGGER = logging.getLogger("translated.roots")

K_RANGE = range(2, 21)
S_FAMILY_CAP = 3
H_BRACKET = (0, 2)
_MAX_SEED_STEPS = 40


def _sign(x: mpf) -> int:
    return (x > 0) - (x < 0)


def find_root(
    g: RealFunction,
    lo: Any,
    hi: Any,
    ctx: NumericContext = DEFAULT_CONTEXT,
    *,
    family: str = "",
    k: int | None = None,
) -> RootResult:
    """Locate a root of ``g`` inside ``[lo, hi]``.

    Raises
    ------
    BracketError
        If ``lo >= hi`` or ``g`` has the same strict sign at both ends.
    ConvergenceError
        If ``ctx.max_root_iterations`` is exhausted.
    """

    with ctx.workprec():
        a = mpf(lo)
        b = mpf(hi)
        if not a < b:
            raise BracketError("bracket must satisfy lo < hi", family=family, k=k)
        fa = g(a)
        fb = g(b)
        if fa == 0:
            return _done(a, fa, (a, b), 0, family, k)
        if fb == 0:
            return _done(b, fb, (a, b), 0, family, k)
        if _sign(fa) == _sign(fb):
            raise BracketError(
                "root bracket does not change sign",
                family=family,
                k=k,
                lo=mpmath.nstr(a, 15),
                hi=mpmath.nstr(b, 15),
                g_lo=mpmath.nstr(fa, 5),
                g_hi=mpmath.nstr(fb, 5),
            )
        eps_root = mpf(ctx.eps_root)
        resolution = mpmath.ldexp(mpf(1), -ctx.prec + 8)
        side = 0
        width = b - a
        stalled = 0
        best: tuple[mpf, mpf] = (a, fa) if abs(fa) < abs(fb) else (b, fb)
        for iteration in range(1, ctx.max_root_iterations + 1):
            if stalled >= 2:
                c = (a + b) / 2
                stalled = 0
            else:
                c = (a * fb - b * fa) / (fb - fa)
                if not a < c < b:
                    c = (a + b) / 2
            fc = g(c)
            if abs(fc) < abs(best[1]):
                best = (c, fc)
            if _sign(fc) == _sign(fb):
                b, fb = c, fc
                if side == -1:
                    fa /= 2
                side = -1
            elif _sign(fc) == _sign(fa):
                a, fa = c, fc
                if side == 1:
                    fb /= 2
                side = 1
            if abs(fc) <= eps_root:
                return _done(c, fc, (a, b), iteration, family, k)
            if b - a > width / 2:
                stalled += 1
            else:
                stalled = 0
            width = b - a
            if width <= resolution * max(mpf(1), abs(a)):
                break
    increment("roots.failed")
    log_event(
        LOGGER,
        "root-not-converged",
        level=logging.WARNING,
        family=family,
        k=k,
        best=best[0],
        residual=best[1],
    )
    raise ConvergenceError(
        "root search did not reach the residual tolerance",
        family=family,
        k=k,
        residual=mpmath.nstr(best[1], 5),
    )


def _done(
    root: mpf,
    residual: mpf,
    bracket: tuple[mpf, mpf],
    iterations: int,
    family: str,
    k: int | None,
) -> RootResult:
    increment("roots.converged")
    log_event(
        LOGGER,
        "root-converged",
        family=family,
        k=k,
        root=root,
        residual=residual,
        iterations=iterations,
    )
    return RootResult(
        root=root,
        residual=residual,
        bracket=bracket,
        iterations=iterations,
        converged=True,
        family=family,
        k=k,
    )


def _check_k(k: int) -> None:
    if k not in K_RANGE:
        raise DomainError("k must lie in 2..20", k=k)


def _seeded_bracket(
    g: Callable[[mpf], mpf], k: int, ctx: NumericContext, family: str
) -> tuple[mpf, mpf]:
    """Bracket a root of ``g`` (positive left of it) starting at ``1 + 1/k**3``."""

    with ctx.workprec():
        seed = 1 + mpf(1) / k**3
        cap = mpf(S_FAMILY_CAP)
        if g(seed) > 0:
            lo, hi = seed, seed
            while True:
                hi = min(cap, 1 + 2 * (hi - 1))
                if g(hi) < 0:
                    return lo, hi
                if hi >= cap:
                    break
                lo = hi
        else:
            hi = lo = seed
            for _ in range(_MAX_SEED_STEPS):
                lo = 1 + (lo - 1) / 8
                if g(lo) > 0:
                    return lo, hi
                hi = lo
    raise BracketError("could not seed a sign-changing bracket", family=family, k=k)


def _s_family(
    g: Callable[[mpf], mpf], k: int, ctx: NumericContext, family: str
) -> RootResult:
    lo, hi = _seeded_bracket(g, k, ctx, family)
    return find_root(g, lo, hi, ctx, family=family, k=k)


def aux_root_s_k(k: int, ctx: NumericContext = DEFAULT_CONTEXT) -> RootResult:
    """Root of ``P(s) = (k!)^(1/(k-1))``."""

    _check_k(k)
    with ctx.workprec():
        level = mpf(math.factorial(k)) ** (mpf(1) / (k - 1))

    def g(s: mpf) -> mpf:
        return prime_zeta(s, ctx).value - level

    return _s_family(g, k, ctx, "sk")


def aux_root_t_k(k: int, ctx: NumericContext = DEFAULT_CONTEXT) -> RootResult:
    """Root of ``P_k(t) / (2^-t + 3^-t) = 1``."""

    _check_k(k)

    def g(t: mpf) -> mpf:
        value = almost_zeta_family(k, t, ctx).values[k]
        return value / (mpmath.power(2, -t) + mpmath.power(3, -t)) - 1

    return _s_family(g, k, ctx, "tk")


def aux_root_s_prime_k(k: int, ctx: NumericContext = DEFAULT_CONTEXT) -> RootResult:
    """Root of ``P_{k-1}(s) = 1``."""

    _check_k(k)

    def g(s: mpf) -> mpf:
        return almost_zeta_family(k - 1, s, ctx).values[k - 1] - 1

    return _s_family(g, k, ctx, "spk")


def sigma_k(k: int, ctx: NumericContext = DEFAULT_CONTEXT) -> RootResult:
    """The crossing ``P_k(s) = P(s)``."""

    _check_k(k)

    def g(s: mpf) -> mpf:
        values = almost_zeta_family(k, s, ctx).values
        return values[k] - values[1]

    return _s_family(g, k, ctx, "sigma")


def h_k(
    k: int,
    ctx: NumericContext = DEFAULT_CONTEXT,
    *,
    samples: AlmostPrimeSamples | None = None,
) -> RootResult:
    """The translation where ``f(N_k, h) - f(N_1, h)`` turns positive."""

    _check_k(k)
    samples = samples if samples is not None else AlmostPrimeSamples(k, ctx)
    split = choose_split(k, H_BRACKET[0], ctx, difference=True)

    def g(h: mpf) -> mpf:
        return f_difference(k, h, ctx, samples=samples, split=split).value

    return find_root(g, *H_BRACKET, ctx, family="hk", k=k)


def h_infinity(
    ctx: NumericContext = DEFAULT_CONTEXT,
    *,
    samples: AlmostPrimeSamples | None = None,
) -> RootResult:
    """The translation ``t`` with ``f(N_1, t) = 1``."""

    samples = samples if samples is not None else AlmostPrimeSamples(1, ctx)
    split = choose_split(1, H_BRACKET[0], ctx)

    def g(t: mpf) -> mpf:
        return f_translated(1, t, ctx, samples=samples, split=split).value - 1

    return find_root(g, *H_BRACKET, ctx, family="hinf")


ROOT_FAMILIES: dict[str, Callable[..., RootResult]] = {
    "sk": aux_root_s_k,
    "tk": aux_root_t_k,
    "spk": aux_root_s_prime_k,
    "sigma": sigma_k,
    "hk": h_k,
}


__all__ = [
    "H_BRACKET",
    "K_RANGE",
    "ROOT_FAMILIES",
    "aux_root_s_k",
    "aux_root_s_prime_k",
    "aux_root_t_k",
    "find_root",
    "h_infinity",
    "h_k",
    "sigma_k",
]
