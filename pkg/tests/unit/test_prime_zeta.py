"""Tests for the prime zeta function via Moebius inversion."""

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mpf

from core.service.prime_zeta import (
    LogZetaMemo,
    derivative_tail_majorant,
    moebius_truncation,
    prime_zeta,
    prime_zeta_at_multiple,
    prime_zeta_deriv,
    tail_majorant,
)
from core.service.special_functions import moebius_upto
from interfaces.shared_types.errors import ConvergenceError, DomainError
from interfaces.shared_types.numeric_context import make_context


@pytest.mark.unit
class TestPrimeZeta:
    """Values of P(s)."""

    def test_at_two(self, ctx):
        """Test P(2) to twelve places."""
        assert mpmath.nstr(prime_zeta(2, ctx).value, 12) == "0.452247420041"

    @pytest.mark.published
    def test_unit_level_at_s_prime_2(self, ctx):
        """Test P crosses 1 at the published s'_2."""
        assert abs(prime_zeta("1.39943", ctx).value - 1) < mpf("2e-5")

    def test_large_s_dominated_by_small_primes(self, ctx):
        """Test P(30) against its first three primes."""
        with ctx.workprec():
            direct = mpf(2) ** -30 + mpf(3) ** -30 + mpf(5) ** -30
            assert abs(prime_zeta(30, ctx).value - direct) < mpf("1e-20")

    def test_error_bound_certified(self, ctx):
        """Test the reported bound stays under eps_eval."""
        for s in ("1.0001", "1.5", "4"):
            result = prime_zeta(s, ctx)
            assert result.err_bound < ctx.eps_eval
            assert result.value > 0

    def test_terms_used_shrink_with_s(self, ctx):
        """Test fewer Moebius terms are needed further from 1."""
        assert prime_zeta("1.01", ctx).terms_used > prime_zeta(10, ctx).terms_used

    def test_strictly_decreasing(self, ctx):
        """Test P decreases along a grid."""
        grid = ["1.0001", "1.001", "1.1", "1.7", "3", "9", "39"]
        values = [prime_zeta(s, ctx).value for s in grid]
        assert all(a > b for a, b in zip(values, values[1:]))

    @pytest.mark.oracle
    def test_log_singularity_near_one(self, ctx):
        """Test the constant term of P(s) - log(1/(s-1)) at s = 1."""
        # P(s) - log(1/(s-1)) tends to sum_{m>=2} mu(m) log zeta(m) / m
        with ctx.workprec():
            s = 1 + mpf(10) ** -12
            gap = prime_zeta(s, ctx).value - mpmath.log(1 / (s - 1))
            mu = moebius_upto(120)
            limit = sum(
                int(mu[m]) * mpmath.log(mpmath.zeta(m)) / m for m in range(2, 121)
            )
            assert abs(gap - limit) < mpf("1e-10")

    @settings(max_examples=10, deadline=None)
    @given(s=st.sampled_from(["1.2", "2", "3.3", "6"]))
    def test_matches_library(self, ctx, s):
        """Test agreement with mpmath.primezeta."""
        with ctx.workprec():
            expected = mpmath.primezeta(mpf(s))
            assert abs(prime_zeta(s, ctx).value - expected) < mpf("1e-14")


@pytest.mark.unit
class TestPrimeZetaDerivative:
    """Values of P'(s)."""

    def test_at_two(self, ctx):
        """Test P'(2) to twelve places with a certified bound."""
        result = prime_zeta_deriv(2, ctx)
        assert mpmath.nstr(result.derivative, 12) == "-0.493091109369"
        assert result.derivative_err is not None
        assert result.derivative_err < ctx.eps_eval

    @pytest.mark.parametrize("s", ["1.01", "1.5", "3", "6"])
    def test_negative(self, ctx, s):
        """Test P' is negative on s > 1."""
        assert prime_zeta_deriv(s, ctx).derivative < 0

    def test_value_agrees_with_plain_call(self, ctx):
        """Test the value computed alongside P' matches P within its bound."""
        with_derivative = prime_zeta_deriv("2.5", ctx)
        plain = prime_zeta("2.5", ctx)
        gap = abs(with_derivative.value - plain.value)
        assert gap <= with_derivative.err_bound + plain.err_bound

    @pytest.mark.oracle
    def test_matches_finite_difference(self, ctx):
        """Test P'(2.5) against a central difference of P."""
        with ctx.workprec():
            s = mpf("2.5")
            delta = mpf("1e-9")
            fd = (prime_zeta(s + delta, ctx).value - prime_zeta(s - delta, ctx).value)
            fd /= 2 * delta
            exact = prime_zeta_deriv(s, ctx).derivative
            assert abs(fd - exact) / abs(exact) < mpf("1e-6")

    @pytest.mark.oracle
    @pytest.mark.parametrize("s", ["1.01", "4", "8"])
    def test_arguments_reaching_forty(self, ctx, s):
        """Test P' where the Moebius series evaluates zeta'/zeta(40)."""
        result = prime_zeta_deriv(s, ctx)
        with ctx.workprec():
            expected = mpmath.diff(mpmath.primezeta, mpf(s))
            assert abs(result.derivative - expected) < mpf("1e-12") * abs(expected)
        assert result.derivative_err < ctx.eps_eval

    def test_plain_call_has_no_derivative(self, ctx):
        """Test P alone leaves the derivative fields empty."""
        assert prime_zeta(2, ctx).derivative is None


@pytest.mark.unit
class TestMoebiusSeries:
    """Truncation rule, tail majorants and the shared log-zeta memo."""

    def test_truncation_formula(self):
        """Test the truncation count at s = 2, eps = 1e-16."""
        # ceil((log2(1e16) + 4) / 2) + 4 = ceil(57.15 / 2) + 4
        assert moebius_truncation(2, 1e-16, 256) == 33

    def test_truncation_clamped(self):
        """Test the truncation count respects the cap."""
        assert moebius_truncation("1.0001", 1e-16, 10) == 10

    def test_tail_majorant_bounds_series(self, ctx):
        """Test the value majorant dominates the omitted 2^(1-ms)/m."""
        with ctx.workprec():
            s = mpf(2)
            tail = sum(mpf(2) ** (1 - m * s) / m for m in range(11, 200))
            assert tail_majorant(s, 10) >= tail

    @pytest.mark.parametrize("s", ["1.01", "2"])
    def test_derivative_tail_majorant_bounds_series(self, ctx, s):
        """Test the derivative majorant dominates the omitted |zeta'/zeta(ms)|."""
        with ctx.workprec():
            x = mpf(s)
            tail = sum(
                abs(mpmath.zeta(m * x, 1, 1) / mpmath.zeta(m * x))
                for m in range(6, 120)
            )
            assert derivative_tail_majorant(x, 5) >= tail
            assert derivative_tail_majorant(x, 5) > tail_majorant(x, 5)

    def test_memo_reuses_multiples(self, ctx):
        """Test P(4) reuses log zeta values cached for P(2)."""
        memo = LogZetaMemo(2, ctx)
        first = prime_zeta_at_multiple(memo, 1)
        size = len(memo)
        second = prime_zeta_at_multiple(memo, 2)
        assert len(memo) < 2 * size
        assert second.value == prime_zeta(4, ctx).value
        assert first.value == prime_zeta(2, ctx).value

    def test_memo_arguments(self, ctx):
        """Test the memo evaluates at integer multiples of s."""
        memo = LogZetaMemo("1.5", ctx)
        assert memo.argument(1) == mpf("1.5")
        assert memo.argument(4) == 6


@pytest.mark.unit
@pytest.mark.error_handling
class TestPrimeZetaErrors:
    """Domain and cap violations."""

    @pytest.mark.parametrize("s", [1, "0.99", 0])
    def test_rejects_s_at_most_one(self, ctx, s):
        """Test s <= 1 raises DomainError."""
        with pytest.raises(DomainError):
            prime_zeta(s, ctx)

    def test_cap_exhaustion_is_explicit(self):
        """Test a too-small Moebius cap raises instead of truncating."""
        tight = make_context(30, max_moebius_terms=3)
        with pytest.raises(ConvergenceError) as exc_info:
            prime_zeta("1.01", tight)
        assert exc_info.value.detail["terms"] == 3
