"""Callable contracts for integrands and root-finding targets"""

from __future__ import annotations

from typing import Protocol, runtime_checkable

from mpmath import mpf


@runtime_checkable
class RealFunction(Protocol):
    """A real function of one real variable evaluated at mpmath precision."""

    def __call__(self, x: mpf, /) -> mpf:
        """Return the function value at ``x``."""
