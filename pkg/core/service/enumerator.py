"""Brute-force enumeration of k-almost primes.

The oracle side of the package: ``Omega(n)`` for every ``n <= N`` comes from
a smallest-prime-factor sieve, and truncated Dirichlet sums and truncated
translated sums are summed in double precision. Tail windows are coarse; the
certified values live in the analytic modules.
"""

from __future__ import annotations

import functools
import logging
import math
from collections.abc import Iterator
from typing import Any

import mpmath
import numpy as np
import numpy.typing as npt
from mpmath import mpf

from core.service.special_functions import as_real
from infrastructure.monitoring import log_event, timed
from interfaces.shared_types.errors import DomainError
from interfaces.shared_types.numeric_context import DEFAULT_CONTEXT, NumericContext
from interfaces.shared_types.results import EvalResult

LOGGER = logging.getLogger("translated.enumerator")

SPF_TABLE_LIMIT = 10**6
MAX_ENUMERATION_LIMIT = 10**8


@functools.lru_cache(maxsize=4)
def smallest_prime_factors(limit: int) -> npt.NDArray[np.int32]:
    """``spf[n]`` for ``0 <= n <= limit``; entries 0 and 1 are 0."""

    if limit < 2:
        raise DomainError("sieve limit must be at least 2", limit=limit)
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    unset = np.flatnonzero(spf == 0)
    spf[unset] = unset
    spf[:2] = 0
    spf.flags.writeable = False
    return spf


@functools.lru_cache(maxsize=4)
def omega_table(limit: int) -> npt.NDArray[np.int8]:
    """``Omega(n)`` for ``0 <= n <= limit`` (entries 0 and 1 are 0)."""

    with timed("enumerator.omega_table", LOGGER):
        spf = smallest_prime_factors(limit)
        omega = np.zeros(limit + 1, dtype=np.int8)
        rest = np.arange(limit + 1, dtype=np.int32)
        active = np.arange(2, limit + 1, dtype=np.int64)
        while active.size:
            rest[active] //= spf[rest[active]]
            omega[active] += 1
            active = active[rest[active] > 1]
    omega.flags.writeable = False
    return omega


def big_omega(n: int) -> int:
    """Number of prime factors of ``n`` counted with multiplicity.

    Raises
    ------
    DomainError
        If ``n < 2``.
    """

    if n < 2:
        raise DomainError("big_omega requires n >= 2", n=n)
    if n <= SPF_TABLE_LIMIT:
        spf = smallest_prime_factors(SPF_TABLE_LIMIT)
        count = 0
        while n > 1:
            n //= int(spf[n])
            count += 1
        return count
    count = 0
    p = 2
    while p * p <= n:
        while n % p == 0:
            n //= p
            count += 1
        p += 1 if p == 2 else 2
    return count + (1 if n > 1 else 0)


class AlmostPrimeStream:
    """Increasing enumeration of ``{n <= limit : Omega(n) = k}``.

    Single-consumer: iteration advances a cursor. ``len`` is the total size
    of the set, independent of the cursor.
    """

    def __init__(self, k: int, limit: int, values: npt.NDArray[np.int64]) -> None:
        self.k = k
        self.limit = limit
        self._values = values
        self._cursor = 0

    def __iter__(self) -> Iterator[int]:
        return self

    def __next__(self) -> int:
        if self._cursor >= self._values.size:
            raise StopIteration
        value = int(self._values[self._cursor])
        self._cursor += 1
        return value

    def __len__(self) -> int:
        return int(self._values.size)

    def as_array(self) -> npt.NDArray[np.int64]:
        """All members as a read-only array, ignoring the cursor."""
        return self._values


def enumerate_almost_primes(k: int, limit: int) -> AlmostPrimeStream:
    """Stream the k-almost primes up to ``limit``.

    A ``limit`` below ``2**k`` gives an empty stream.

    Raises
    ------
    DomainError
        If ``k < 1`` or ``limit`` exceeds the sieve bound.
    """

    if k < 1:
        raise DomainError("k must be >= 1", k=k)
    if limit > MAX_ENUMERATION_LIMIT:
        raise DomainError(
            "enumeration is limited to N <= 10^8",
            limit=limit,
            max_limit=MAX_ENUMERATION_LIMIT,
        )
    if limit < 2**k:
        values = np.empty(0, dtype=np.int64)
    else:
        values = np.flatnonzero(omega_table(limit) == k).astype(np.int64)
    values.flags.writeable = False
    return AlmostPrimeStream(k, limit, values)


def _members(k: int, limit: int) -> npt.NDArray[np.float64]:
    return enumerate_almost_primes(k, limit).as_array().astype(np.float64)


def partial_zeta(
    k: int, s: Any, limit: int, ctx: NumericContext = DEFAULT_CONTEXT
) -> EvalResult:
    """``sum n^-s`` over the k-almost primes ``n <= limit``.

    ``err_bound`` is the window ``limit^(1-s)/(s-1)`` containing the omitted
    tail.
    """

    ss = as_real(s, ctx)
    if not ss > 1:
        raise DomainError("partial_zeta requires s > 1", s=str(ss))
    members = _members(k, limit)
    exponent = float(ss)
    total = float(np.sum(members**-exponent))
    with ctx.workprec():
        window = mpf(limit) ** (1 - ss) / (ss - 1)
        value = mpf(total)
    log_event(
        LOGGER,
        "partial-zeta",
        level=logging.DEBUG,
        k=k,
        s=ss,
        limit=limit,
        terms=members.size,
    )
    return EvalResult(
        value=value,
        err_bound=window,
        work={"terms": int(members.size), "limit": limit},
    )


def partial_f(
    k: int, h: Any, limit: int, ctx: NumericContext = DEFAULT_CONTEXT
) -> EvalResult:
    """``sum 1/(n (log n + h))`` over the k-almost primes ``n <= limit``.

    ``err_bound`` is a heuristic tail size
    ``2 (log log N + 1)^(k-1) / ((k-1)! (log N + h))``; the convergence in
    ``N`` is only logarithmic.
    """

    hh = as_real(h, ctx)
    if hh < 0:
        raise DomainError("translation h must be non-negative", h=str(hh))
    members = _members(k, limit)
    shift = float(hh)
    total = float(np.sum(1.0 / (members * (np.log(members) + shift))))
    with ctx.workprec():
        log_n = mpmath.log(max(limit, 3))
        tail = 2 * (mpmath.log(log_n) + 1) ** (k - 1)
        tail /= math.factorial(k - 1) * (log_n + hh)
        value = mpf(total)
    log_event(
        LOGGER,
        "partial-f",
        level=logging.DEBUG,
        k=k,
        h=hh,
        limit=limit,
        terms=members.size,
    )
    return EvalResult(
        value=value,
        err_bound=tail,
        work={"terms": int(members.size), "limit": limit},
    )


__all__ = [
    "AlmostPrimeStream",
    "MAX_ENUMERATION_LIMIT",
    "SPF_TABLE_LIMIT",
    "big_omega",
    "enumerate_almost_primes",
    "omega_table",
    "partial_f",
    "partial_zeta",
    "smallest_prime_factors",
]
