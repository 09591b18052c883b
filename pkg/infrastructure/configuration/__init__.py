"""Run settings assembled from command-line flags."""

from __future__ import annotations

from argparse import Namespace
from dataclasses import dataclass

from interfaces.shared_types.numeric_context import (
    MIN_DIGITS,
    NumericContext,
    make_context,
)

ALLOWED_FORMATS = {"text", "csv", "json"}
ALLOWED_LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR"}
MAX_ORACLE_LIMIT = 10**8


@dataclass(slots=True)
class Settings:
    """Everything a run depends on; nothing is read from the environment."""

    precision: int = 30
    display_digits: int = 6
    output_format: str = "text"
    limit: int | None = None
    workers: int = 1
    log_level: str = "WARNING"

    def numeric_context(self) -> NumericContext:
        """Build the computation context for ``precision``."""
        return make_context(self.precision)


def validate_settings(settings: Settings) -> None:
    """Validate *settings*.

    Raises
    ------
    ValueError
        If any flag is outside its supported range.
    """

    if settings.precision < MIN_DIGITS:
        raise ValueError(f"--precision must be at least {MIN_DIGITS}")
    if not 0 <= settings.display_digits <= settings.precision:
        raise ValueError("--digits must lie between 0 and --precision")
    if settings.output_format not in ALLOWED_FORMATS:
        raise ValueError(f"Unsupported format: {settings.output_format}")
    if settings.limit is not None and not 2 <= settings.limit <= MAX_ORACLE_LIMIT:
        raise ValueError(f"--limit must lie in [2, {MAX_ORACLE_LIMIT}]")
    if settings.workers < 1:
        raise ValueError("--workers must be positive")
    if settings.log_level.upper() not in ALLOWED_LOG_LEVELS:
        raise ValueError(f"Unsupported log level: {settings.log_level}")


def load_settings(args: Namespace) -> Settings:
    """Return validated settings derived from parsed CLI arguments."""

    settings = Settings(
        precision=getattr(args, "precision", 30),
        display_digits=getattr(args, "digits", 6),
        output_format=getattr(args, "format", "text"),
        limit=getattr(args, "limit", None),
        workers=getattr(args, "workers", 1),
        log_level=getattr(args, "log_level", "WARNING"),
    )
    validate_settings(settings)
    return settings


__all__ = [
    "ALLOWED_FORMATS",
    "MAX_ORACLE_LIMIT",
    "Settings",
    "load_settings",
    "validate_settings",
]
