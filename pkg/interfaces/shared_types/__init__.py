"""Data types shared across the service layer and the CLI."""

from .errors import (
    BracketError,
    ConvergenceError,
    DomainError,
    RootFailure,
    TranslatedSumsError,
)
from .results import (
    AlmostPrimeZetaEval,
    EvalResult,
    PrimeZetaEval,
    QuadratureResult,
    RootResult,
)
from .table import (
    TABLE_COLUMNS,
    BoundsReport,
    ChainStep,
    OrderingCheck,
    OrderingReport,
    SuiteCheck,
    SuiteOutcome,
    TableRow,
)

__all__ = [
    "AlmostPrimeZetaEval",
    "BoundsReport",
    "BracketError",
    "ChainStep",
    "ConvergenceError",
    "DEFAULT_CONTEXT",
    "DomainError",
    "EvalResult",
    "NumericContext",
    "OrderingCheck",
    "OrderingReport",
    "OutputRecord",
    "PrimeZetaEval",
    "QuadratureResult",
    "RootFailure",
    "RootResult",
    "SuiteCheck",
    "SuiteOutcome",
    "TABLE_COLUMNS",
    "TableRow",
    "TranslatedSumsError",
    "make_context",
    "round_for_display",
]

_PYDANTIC_EXPORTS = {
    "DEFAULT_CONTEXT": ".numeric_context",
    "NumericContext": ".numeric_context",
    "make_context": ".numeric_context",
    "round_for_display": ".numeric_context",
    "OutputRecord": ".records",
}


def __getattr__(name: str):  # pragma: no cover - simple proxy
    module_name = _PYDANTIC_EXPORTS.get(name)
    if module_name is not None:
        from importlib import import_module

        return getattr(import_module(module_name, __name__), name)
    raise AttributeError(name)
