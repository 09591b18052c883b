"""Top-level package exposing the computational service layer lazily."""

from importlib import import_module
from typing import Any

__all__ = ["service"]


def __getattr__(name: str) -> Any:  # pragma: no cover - simple lazy importer
    if name == "service":
        return import_module("core.service")
    raise AttributeError(name)
