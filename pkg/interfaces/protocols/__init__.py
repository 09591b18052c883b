"""Protocols defining cross-module behaviours."""

from .real_function import RealFunction

__all__ = ["RealFunction"]
