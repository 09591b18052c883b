"""Precision and tolerance regime shared by every evaluation."""

from __future__ import annotations

import math
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from typing import Any

import mpmath
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import DomainError

MIN_DIGITS = 15
DEFAULT_DIGITS = 30
GUARD_BITS = 32


def _em_nodes(digits: int) -> int:
    return max(20, math.ceil(1.5 * digits))


def _em_bernoulli(digits: int) -> int:
    return max(20, digits)


def _node_floor(digits: int) -> int:
    return math.ceil(1.5 * digits)


class NumericContext(BaseModel):
    """Immutable precision/tolerance settings.

    ``digits`` fixes the working precision; the Euler-Maclaurin cutoffs and
    the quadrature node floor default to values derived from it, so a context
    built from more digits never loosens any tolerance.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    digits: int = Field(DEFAULT_DIGITS, ge=MIN_DIGITS)
    eps_eval: float = Field(1e-13, gt=0)
    eps_root: float = Field(1e-10, gt=0)
    max_quad_level: int = Field(12, gt=0)
    max_moebius_terms: int = Field(256, gt=0)
    max_root_iterations: int = Field(200, gt=0)
    zeta_em_nodes: int = Field(0, ge=0)
    zeta_em_bernoulli: int = Field(0, ge=0)
    node_floor_digits: int = Field(0, ge=0)

    @model_validator(mode="before")
    @classmethod
    def _derive_cutoffs(cls, values: Any) -> Any:
        if not isinstance(values, dict):
            return values
        data = dict(values)
        digits = int(data.get("digits", DEFAULT_DIGITS))
        if not data.get("zeta_em_nodes"):
            data["zeta_em_nodes"] = _em_nodes(digits)
        if not data.get("zeta_em_bernoulli"):
            data["zeta_em_bernoulli"] = _em_bernoulli(digits)
        if not data.get("node_floor_digits"):
            data["node_floor_digits"] = _node_floor(digits)
        return data

    @model_validator(mode="after")
    def _check_tolerances(self) -> NumericContext:
        if self.eps_root < self.eps_eval:
            raise ValueError("eps_root must not be tighter than eps_eval")
        return self

    @property
    def prec(self) -> int:
        """Binary working precision in bits (digits plus guard bits)."""
        return math.ceil(self.digits * 3.33) + GUARD_BITS

    @property
    def working_tol(self) -> mpmath.mpf:
        """Relative accuracy targeted by direct zeta evaluations."""
        return mpmath.mpf(10) ** (-self.digits)

    def workprec(self) -> Any:
        """Context manager switching mpmath to this context's precision."""
        return mpmath.workprec(self.prec)


def make_context(digits: int = DEFAULT_DIGITS, **overrides: Any) -> NumericContext:
    """Return a context whose defaults are scaled to ``digits``."""

    if digits < MIN_DIGITS:
        raise DomainError(
            f"digits must be >= {MIN_DIGITS}; double precision cannot certify "
            "a 13-digit accuracy goal",
            digits=digits,
        )
    return NumericContext(digits=digits, **overrides)


def _to_decimal(x: Any) -> Decimal:
    if isinstance(x, Decimal):
        return x
    if isinstance(x, (int, str)):
        return Decimal(x)
    if isinstance(x, float):
        return Decimal(repr(x))
    value = mpmath.mpf(x)
    return Decimal(mpmath.nstr(value, max(mpmath.mp.dps, 20) + 10))


def round_for_display(x: Any, places: int) -> str:
    """Round ``x`` half-even to exactly ``places`` fractional digits."""

    if places < 0:
        raise DomainError("places must be non-negative", places=places)
    with localcontext() as dctx:
        dctx.prec = 200
        quantum = Decimal(1).scaleb(-places)
        rounded = _to_decimal(x).quantize(quantum, rounding=ROUND_HALF_EVEN)
    return f"{rounded:f}"


DEFAULT_CONTEXT = NumericContext()


__all__ = [
    "DEFAULT_CONTEXT",
    "MIN_DIGITS",
    "NumericContext",
    "make_context",
    "round_for_display",
]
