"""Dirichlet series ``P_k(s) = sum_{Omega(n)=k} n^-s`` of the k-almost primes.

Values come from the Newton-type recursion

    P_0 = 1,   P_k(s) = (1/k) sum_{j=1..k} P_{k-j}(s) P(js),
    P'_k(s) = sum_{j=1..k} P_{k-j}(s) P'(js),

fed by one shared set of ``P(js)`` evaluations. The explicit sum over
partitions of ``k`` is kept as an independent cross-check.
"""

from __future__ import annotations

import functools
import math
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

import mpmath
from mpmath import mpf

from core.service.prime_zeta import LogZetaMemo, prime_zeta_at_multiple
from interfaces.shared_types.errors import DomainError
from interfaces.shared_types.numeric_context import DEFAULT_CONTEXT, NumericContext
from interfaces.shared_types.results import (
    AlmostPrimeZetaEval,
    EvalResult,
    PrimeZetaEval,
)

PARTITION_ORACLE_MAX_K = 20
LOWER_BOUND_MIN_K = 8
ERROR_INFLATION = 2


@dataclass(frozen=True, slots=True)
class PartitionTerm:
    """A partition of ``k`` stored as part multiplicities ``j -> n_j``."""

    multiplicities: dict[int, int]

    @property
    def total(self) -> int:
        return sum(j * n for j, n in self.multiplicities.items())

    def parts(self) -> tuple[int, ...]:
        """Parts in non-increasing order."""
        return tuple(
            j
            for j in sorted(self.multiplicities, reverse=True)
            for _ in range(self.multiplicities[j])
        )

    def weight(self, prime_values: Sequence[mpf]) -> mpf:
        """``prod_j (P(js)/j)^n_j / n_j!`` with ``prime_values[j-1] = P(js)``."""
        term = mpf(1)
        for j, n in self.multiplicities.items():
            term *= (prime_values[j - 1] / j) ** n / math.factorial(n)
        return term

    def relative_error(
        self, prime_values: Sequence[mpf], prime_errs: Sequence[mpf]
    ) -> mpf:
        """First-order relative error of :meth:`weight`."""
        total = mpf(0)
        for j, n in self.multiplicities.items():
            total += n * prime_errs[j - 1] / prime_values[j - 1]
        return total


@functools.cache
def _partition_parts(k: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if k == 0:
        return ((),)
    found: list[tuple[int, ...]] = []
    for first in range(min(k, largest), 0, -1):
        for rest in _partition_parts(k - first, first):
            found.append((first, *rest))
    return tuple(found)


def partitions(k: int) -> list[PartitionTerm]:
    """All partitions of ``k``, largest part first (``{k}`` leads, ``1^k`` ends)."""

    if k < 1:
        raise DomainError("partitions requires k >= 1", k=k)
    return [PartitionTerm(dict(Counter(parts))) for parts in _partition_parts(k, k)]


def _term(mapping: dict[int, int]) -> PartitionTerm:
    return PartitionTerm({j: n for j, n in mapping.items() if n > 0})


def lower_bound_partitions(k: int) -> list[PartitionTerm]:
    """Partitions ``1^k``, ``1^(k-j)+j``, ``1^(k-4)+2+2`` and ``1^(k-j-2)+2+j``."""

    if k < LOWER_BOUND_MIN_K:
        raise DomainError(f"lower bound partitions need k >= {LOWER_BOUND_MIN_K}", k=k)
    terms = [_term({1: k})]
    terms += [_term({1: k - j, j: 1}) for j in range(2, 7)]
    terms.append(_term({1: k - 4, 2: 2}))
    terms += [_term({1: k - j - 2, 2: 1, j: 1}) for j in range(3, 7)]
    return terms


@dataclass(frozen=True, slots=True)
class AlmostPrimeFamily:
    """``P_0..P_kmax`` (optionally with derivatives) at one abscissa."""

    s: mpf
    values: tuple[mpf, ...]
    errors: tuple[mpf, ...]
    prime_values: tuple[PrimeZetaEval, ...]
    derivatives: tuple[mpf, ...] | None = None
    derivative_errors: tuple[mpf, ...] | None = None

    @property
    def kmax(self) -> int:
        return len(self.values) - 1

    def at(self, k: int) -> AlmostPrimeZetaEval:
        if not 0 <= k <= self.kmax:
            raise DomainError("k outside the evaluated family", k=k, kmax=self.kmax)
        return AlmostPrimeZetaEval(
            k=k,
            s=self.s,
            value=self.values[k],
            err_bound=self.errors[k],
            derivative=None if self.derivatives is None else self.derivatives[k],
            derivative_err=(
                None if self.derivative_errors is None else self.derivative_errors[k]
            ),
        )


def _check_k(k: int) -> None:
    if k < 0:
        raise DomainError("k must be a non-negative integer", k=k)


def almost_zeta_family(
    kmax: int,
    s: Any,
    ctx: NumericContext = DEFAULT_CONTEXT,
    *,
    derivative: bool = False,
) -> AlmostPrimeFamily:
    """Evaluate ``P_0(s) .. P_kmax(s)`` from one memoised set of ``P(js)``."""

    _check_k(kmax)
    memo = LogZetaMemo(s, ctx, derivative=derivative)
    primes = tuple(prime_zeta_at_multiple(memo, j) for j in range(1, kmax + 1))
    with ctx.workprec():
        values = [mpf(1)]
        errors = [mpf(0)]
        d_values = [mpf(0)]
        d_errors = [mpf(0)]
        for n in range(1, kmax + 1):
            acc = mpf(0)
            err = mpf(0)
            d_acc = mpf(0)
            d_err = mpf(0)
            for j in range(1, n + 1):
                pj = primes[j - 1]
                acc += values[n - j] * pj.value
                err += errors[n - j] * pj.value + values[n - j] * pj.err_bound
                if derivative:
                    assert pj.derivative is not None and pj.derivative_err is not None
                    d_acc += values[n - j] * pj.derivative
                    d_err += (
                        errors[n - j] * abs(pj.derivative)
                        + values[n - j] * pj.derivative_err
                    )
            values.append(acc / n)
            errors.append(err / n)
            d_values.append(d_acc)
            d_errors.append(d_err)
        scale = [1 if n <= 1 else ERROR_INFLATION for n in range(kmax + 1)]
        reported = tuple(e * c for e, c in zip(errors, scale, strict=True))
        d_reported = tuple(e * c for e, c in zip(d_errors, scale, strict=True))
    return AlmostPrimeFamily(
        s=memo.s,
        values=tuple(values),
        errors=reported,
        prime_values=primes,
        derivatives=tuple(d_values) if derivative else None,
        derivative_errors=d_reported if derivative else None,
    )


def almost_zeta(
    k: int, s: Any, ctx: NumericContext = DEFAULT_CONTEXT
) -> AlmostPrimeZetaEval:
    """Evaluate ``P_k(s)``; ``P_0 = 1`` and ``P_1 = P``."""

    _check_k(k)
    return almost_zeta_family(k, s, ctx).at(k)


def almost_zeta_deriv(
    k: int, s: Any, ctx: NumericContext = DEFAULT_CONTEXT
) -> AlmostPrimeZetaEval:
    """Evaluate ``P_k(s)`` with ``P'_k(s)`` populated."""

    _check_k(k)
    return almost_zeta_family(k, s, ctx, derivative=True).at(k)


def _partition_sum(
    terms: Iterable[PartitionTerm], primes: Sequence[PrimeZetaEval]
) -> tuple[mpf, mpf]:
    values = [p.value for p in primes]
    errs = [p.err_bound for p in primes]
    total = mpf(0)
    err = mpf(0)
    for term in terms:
        weight = term.weight(values)
        total += weight
        err += weight * term.relative_error(values, errs)
    return total, ERROR_INFLATION * err


def almost_zeta_partition(
    k: int, s: Any, ctx: NumericContext = DEFAULT_CONTEXT
) -> AlmostPrimeZetaEval:
    """``P_k(s)`` by the explicit sum over all partitions of ``k``."""

    if not 1 <= k <= PARTITION_ORACLE_MAX_K:
        raise DomainError(
            f"partition formula is limited to 1 <= k <= {PARTITION_ORACLE_MAX_K}", k=k
        )
    memo = LogZetaMemo(s, ctx)
    primes = [prime_zeta_at_multiple(memo, j) for j in range(1, k + 1)]
    with ctx.workprec():
        value, err = _partition_sum(partitions(k), primes)
    return AlmostPrimeZetaEval(k=k, s=memo.s, value=value, err_bound=err)


def partition_lower_bound(
    k: int, s: Any, ctx: NumericContext = DEFAULT_CONTEXT
) -> EvalResult:
    """Restricted partition sum, a strict lower bound for ``P_k(s)`` when ``k >= 8``."""

    terms = lower_bound_partitions(k)
    memo = LogZetaMemo(s, ctx)
    primes = [prime_zeta_at_multiple(memo, j) for j in range(1, 7)]
    with ctx.workprec():
        value, err = _partition_sum(terms, primes)
    return EvalResult(
        value=value,
        err_bound=err,
        work={"partitions": len(terms), "s": mpmath.nstr(memo.s, 15)},
    )


__all__ = [
    "AlmostPrimeFamily",
    "PARTITION_ORACLE_MAX_K",
    "PartitionTerm",
    "almost_zeta",
    "almost_zeta_deriv",
    "almost_zeta_family",
    "almost_zeta_partition",
    "lower_bound_partitions",
    "partition_lower_bound",
    "partitions",
]
