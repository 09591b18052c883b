"""Public types and protocols shared across the package."""

__all__: list[str] = []
