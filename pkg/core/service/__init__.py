"""Service layer: analytic kernels, quadrature, root finding and verification."""

from importlib import import_module
from typing import Any

_MODULES = (
    "almost_prime_zeta",
    "bounds",
    "enumerator",
    "prime_zeta",
    "quadrature",
    "roots",
    "special_functions",
    "suites",
    "table",
    "translated_sums",
)

__all__ = list(_MODULES)


def __getattr__(name: str) -> Any:  # pragma: no cover - simple lazy importer
    if name in _MODULES:
        return import_module(f"core.service.{name}")
    raise AttributeError(name)
