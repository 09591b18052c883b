"""Types describing the reproduced table and the verification reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from mpmath import mpf

TABLE_COLUMNS: tuple[str, ...] = ("s_k", "t_k", "s_prime_k", "sigma_k", "h_k")

Status = Literal["pass", "fail", "report"]


@dataclass(frozen=True, slots=True)
class TableRow:
    """One row ``(k, s_k, t_k, s'_k, sigma_k, h_k)`` of the constants table."""

    k: int
    s_k: mpf
    t_k: mpf
    s_prime_k: mpf
    sigma_k: mpf
    h_k: mpf

    def cells(self) -> tuple[mpf, ...]:
        """Return the five constants in column order."""
        return (self.s_k, self.t_k, self.s_prime_k, self.sigma_k, self.h_k)


@dataclass(frozen=True, slots=True)
class OrderingCheck:
    """Orderings of one row: ``s_k < sigma_k < t_k`` and ``t_k < s'_k``."""

    k: int
    sigma_bracketed: bool
    t_below_s_prime: bool
    status: Status


@dataclass(frozen=True, slots=True)
class OrderingReport:
    """Per-row ordering checks for a reproduced table."""

    checks: tuple[OrderingCheck, ...]

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.status == "pass")

    @property
    def reported(self) -> int:
        return sum(1 for c in self.checks if c.status == "report")

    @property
    def ok(self) -> bool:
        """True when no asserted ordering failed."""
        return all(c.status != "fail" for c in self.checks)


@dataclass(frozen=True, slots=True)
class ChainStep:
    """One inequality ``lhs > rhs`` of the lower-bound chain."""

    name: str
    lhs: mpf
    rhs: mpf

    @property
    def margin(self) -> mpf:
        return self.lhs - self.rhs

    @property
    def holds(self) -> bool:
        return self.lhs > self.rhs


@dataclass(frozen=True, slots=True)
class BoundsReport:
    """Constants and verdict of the minimisation chain at ``h = h_2``."""

    alpha: mpf
    h2: mpf
    ell: dict[int, mpf]
    f1_h2: mpf
    f1_published_h2: mpf
    steps: tuple[ChainStep, ...]
    differences: dict[int, mpf] = field(default_factory=dict)
    chain_ok: bool = False
    margin: mpf = field(default_factory=lambda: mpf(0))


@dataclass(frozen=True, slots=True)
class SuiteCheck:
    """One line of a verification suite."""

    name: str
    value: mpf
    status: Status
    k: int | None = None
    err_bound: mpf | None = None


@dataclass(frozen=True, slots=True)
class SuiteOutcome:
    """All checks of one suite; ``ok`` ignores reported lines."""

    suite: str
    checks: tuple[SuiteCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def count(self, status: Status) -> int:
        return sum(1 for c in self.checks if c.status == status)


__all__ = [
    "BoundsReport",
    "ChainStep",
    "OrderingCheck",
    "OrderingReport",
    "Status",
    "SuiteCheck",
    "SuiteOutcome",
    "TABLE_COLUMNS",
    "TableRow",
]
