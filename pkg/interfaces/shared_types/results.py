"""Result containers returned by the service layer."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from mpmath import mpf


@dataclass(frozen=True, slots=True)
class EvalResult:
    """A real value with an error bound and diagnostic counters."""

    value: mpf
    err_bound: mpf
    work: dict[str, Any] = field(default_factory=dict)

    def within(self, tolerance: float | mpf) -> bool:
        """Return whether the bound certifies ``tolerance``."""
        return self.err_bound <= tolerance


@dataclass(frozen=True, slots=True)
class PrimeZetaEval:
    """Evaluation of the prime zeta function (and optionally P') at ``s``."""

    s: mpf
    value: mpf
    err_bound: mpf
    terms_used: int
    derivative: mpf | None = None
    derivative_err: mpf | None = None


@dataclass(frozen=True, slots=True)
class AlmostPrimeZetaEval:
    """Evaluation of P_k (and optionally P'_k) at ``s``."""

    k: int
    s: mpf
    value: mpf
    err_bound: mpf
    derivative: mpf | None = None
    derivative_err: mpf | None = None


@dataclass(frozen=True, slots=True)
class QuadratureResult:
    """Outcome of a double-exponential integration."""

    value: mpf
    err_estimate: mpf
    levels_used: int
    nodes_used: int
    tail_bound: mpf = field(default_factory=lambda: mpf(0))
    split_point: mpf | None = None


@dataclass(frozen=True, slots=True)
class RootResult:
    """A located root with its final sign-changing bracket."""

    root: mpf
    residual: mpf
    bracket: tuple[mpf, mpf]
    iterations: int
    converged: bool
    family: str = ""
    k: int | None = None


__all__ = [
    "AlmostPrimeZetaEval",
    "EvalResult",
    "PrimeZetaEval",
    "QuadratureResult",
    "RootResult",
]
