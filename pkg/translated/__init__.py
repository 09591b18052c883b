"""Prime and almost-prime zeta functions, translated Erdos sums and their constants."""

__version__ = "0.1.0"

__all__ = ["__version__"]
