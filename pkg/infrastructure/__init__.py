"""Run configuration and observability helpers."""

from __future__ import annotations

from .configuration import (
    ALLOWED_FORMATS,
    Settings,
    load_settings,
    validate_settings,
)

__all__ = ["Settings", "load_settings", "validate_settings", "ALLOWED_FORMATS"]
