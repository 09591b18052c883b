"""Tests for the shared precision regime and display rounding."""

import mpmath
import pytest
from mpmath import mpf
from pydantic import ValidationError

from interfaces.shared_types.errors import DomainError
from interfaces.shared_types.numeric_context import (
    DEFAULT_CONTEXT,
    MIN_DIGITS,
    NumericContext,
    make_context,
    round_for_display,
)


@pytest.mark.unit
class TestMakeContext:
    """Construction and derived cutoffs."""

    def test_default_tolerances(self):
        """Test the default eps and cap values."""
        ctx = make_context(30)
        assert ctx.eps_eval == 1e-13
        assert ctx.eps_root == 1e-10
        assert ctx.max_quad_level == 12
        assert ctx.max_moebius_terms == 256

    def test_minimal_context(self):
        """Test the smallest allowed digit count."""
        ctx = make_context(MIN_DIGITS)
        assert ctx.digits == 15

    def test_precision_in_bits(self):
        """Test 30 digits map to 132 bits."""
        assert make_context(30).prec == 100 + 32

    def test_derived_cutoffs_monotone(self):
        """Test derived cutoffs never loosen as digits grow."""
        contexts = [make_context(d) for d in (15, 30, 50, 80)]
        for low, high in zip(contexts, contexts[1:]):
            assert low.zeta_em_nodes <= high.zeta_em_nodes
            assert low.zeta_em_bernoulli <= high.zeta_em_bernoulli
            assert low.node_floor_digits <= high.node_floor_digits
            assert low.prec < high.prec

    def test_explicit_override_kept(self):
        """Test an explicit cutoff is not replaced by the derived one."""
        ctx = make_context(30, zeta_em_nodes=77)
        assert ctx.zeta_em_nodes == 77

    def test_context_is_frozen_and_hashable(self):
        """Test contexts are immutable and hash by value."""
        with pytest.raises(ValidationError):
            DEFAULT_CONTEXT.digits = 40  # type: ignore[misc]
        assert hash(make_context(30)) == hash(make_context(30))

    def test_workprec_switches_precision(self):
        """Test workprec sets and restores the mpmath precision."""
        ctx = make_context(50)
        before = mpmath.mp.prec
        with ctx.workprec():
            assert mpmath.mp.prec == ctx.prec
        assert mpmath.mp.prec == before


@pytest.mark.unit
@pytest.mark.error_handling
class TestContextErrors:
    """Rejected contexts."""

    def test_too_few_digits(self):
        """Test fewer than 15 digits raises DomainError."""
        with pytest.raises(DomainError):
            make_context(10)

    def test_root_tolerance_tighter_than_eval(self):
        """Test eps_root below eps_eval is rejected."""
        with pytest.raises(ValidationError):
            NumericContext(eps_eval=1e-10, eps_root=1e-13)

    def test_non_positive_caps(self):
        """Test a zero quadrature level cap is rejected."""
        with pytest.raises(ValidationError):
            NumericContext(max_quad_level=0)


@pytest.mark.unit
class TestRoundForDisplay:
    """Round-half-even decimal strings."""

    def test_table_entry(self):
        """Test a float rounds to a five-place table entry."""
        assert round_for_display(1.044655, 5) == "1.04466"

    def test_exact_value_padded(self):
        """Test trailing zeros are kept."""
        assert round_for_display(1.0, 5) == "1.00000"

    def test_half_even(self):
        """Test ties round to the even digit."""
        assert round_for_display("0.125", 2) == "0.12"
        assert round_for_display("0.135", 2) == "0.14"

    def test_mpf_input(self):
        """Test mpf values round from their decimal expansion."""
        with DEFAULT_CONTEXT.workprec():
            value = mpf(2) / 3
        assert round_for_display(value, 6) == "0.666667"

    def test_zero_places(self):
        """Test rounding to an integer string."""
        assert round_for_display(2.5, 0) == "2"

    @pytest.mark.error_handling
    def test_negative_places(self):
        """Test negative places raise DomainError."""
        with pytest.raises(DomainError):
            round_for_display(1.0, -1)
