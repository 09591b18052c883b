"""Error hierarchy shared by the service layer and the CLI."""

from __future__ import annotations

from typing import Any


class TranslatedSumsError(Exception):
    """Base error carrying a structured ``detail`` payload."""

    def __init__(self, message: str, **detail: Any) -> None:
        super().__init__(message)
        self.detail = dict(detail)


class DomainError(TranslatedSumsError, ValueError):
    """Argument outside the domain of an operation."""


class ConvergenceError(TranslatedSumsError, RuntimeError):
    """A truncation or iteration cap was exhausted before certification."""


class BracketError(DomainError):
    """Root bracket does not change sign or could not be seeded."""


class RootFailure(ConvergenceError):
    """Root search failed while assembling a table row."""

    def __init__(self, k: int, family: str, cause: Exception) -> None:
        super().__init__(
            f"root family {family!r} failed for k={k}: {cause}",
            k=k,
            family=family,
        )
        self.k = k
        self.family = family
        self.__cause__ = cause


__all__ = [
    "BracketError",
    "ConvergenceError",
    "DomainError",
    "RootFailure",
    "TranslatedSumsError",
]
