"""
Pytest configuration and shared fixtures for the translated-sums test suite.

Heavy objects (node samples, the reproduced table, h_2) are session-scoped
so that each is computed once per run.
"""

import sys
from collections.abc import Generator
from pathlib import Path

import mpmath
import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from core.service.roots import h_k  # noqa: E402
from core.service.table import build_table  # noqa: E402
from core.service.translated_sums import AlmostPrimeSamples  # noqa: E402
from infrastructure.monitoring import reset_metrics  # noqa: E402
from interfaces.shared_types.numeric_context import (  # noqa: E402
    DEFAULT_CONTEXT,
    NumericContext,
    make_context,
)
from interfaces.shared_types.table import TableRow  # noqa: E402

# Published table, five places with trailing zeros dropped:
# k -> (s_k, t_k, s'_k, sigma_k, h_k).
PUBLISHED_TABLE: dict[int, tuple[str, ...]] = {
    2: ("1.11313", "1.40678", "1.39943", "1.14037", "1.04466"),
    3: ("1.06861", "1.23367", "1.25922", "1.09224", "0.98213"),
    4: ("1.04306", "1.15231", "1.17696", "1.06206", "0.93018"),
    5: ("1.02761", "1.104", "1.12386", "1.04231", "0.89038"),
    6: ("1.01795", "1.07259", "1.08784", "1.02907", "0.86146"),
    7: ("1.01179", "1.05125", "1.06272", "1.02007", "0.84126"),
    8: ("1.00779", "1.0364", "1.04493", "1.0139", "0.8276"),
    9: ("1.00518", "1.02594", "1.03223", "1.00964", "0.8186"),
    10: ("1.00346", "1.0185", "1.02312", "1.0067", "0.8128"),
    11: ("1.00231", "1.0132", "1.01658", "1.00466", "0.80915"),
    12: ("1.00155", "1.00942", "1.01187", "1.00325", "0.80689"),
    13: ("1.00105", "1.00672", "1.00849", "1.00226", "0.80551"),
    14: ("1.0007", "1.00479", "1.00607", "1.00158", "0.8047"),
    15: ("1.00048", "1.00341", "1.00433", "1.0011", "0.8042"),
    16: ("1.00032", "1.00243", "1.00309", "1.00077", "0.80391"),
    17: ("1.00022", "1.00173", "1.0022", "1.00053", "0.80374"),
    18: ("1.00015", "1.00123", "1.00157", "1.00037", "0.80365"),
    19: ("1.0001", "1.00087", "1.00112", "1.00026", "0.80359"),
    20: ("1.00007", "1.00062", "1.00079", "1.00018", "0.80356"),
}


# ============================================================================
# Session-level fixtures
# ============================================================================

@pytest.fixture(scope="session")
def ctx() -> NumericContext:
    """Default 30-digit context."""
    return DEFAULT_CONTEXT


@pytest.fixture(scope="session")
def ctx50() -> NumericContext:
    """50-digit context for precision-stability checks."""
    return make_context(50)


@pytest.fixture(scope="session")
def samples(ctx: NumericContext) -> AlmostPrimeSamples:
    """P_0..P_20 node samples shared by every translated-sum test."""
    return AlmostPrimeSamples(20, ctx)


@pytest.fixture(scope="session")
def table_rows(ctx: NumericContext, samples: AlmostPrimeSamples) -> list[TableRow]:
    """The full reproduced table, k = 2..20."""
    return build_table(20, ctx, samples=samples)


@pytest.fixture(scope="session")
def h2(ctx: NumericContext, samples: AlmostPrimeSamples) -> mpmath.mpf:
    """The translation h_2."""
    return h_k(2, ctx, samples=samples).root


@pytest.fixture(scope="session")
def published_table() -> dict[int, tuple[str, ...]]:
    """Published rows keyed by k."""
    return PUBLISHED_TABLE


# ============================================================================
# Function-level fixtures
# ============================================================================

@pytest.fixture
def clean_metrics() -> Generator[None, None, None]:
    """Reset the in-process metrics registry around a test."""
    reset_metrics()
    yield
    reset_metrics()
