"""Tests for table assembly and the ordering checks."""

import pytest
from mpmath import mpf

from core.service import table
from core.service.table import (
    UNASSERTED_T_ORDERING,
    build_table,
    check_orderings,
    table_row,
)
from interfaces.shared_types.errors import BracketError, DomainError, RootFailure
from interfaces.shared_types.table import TableRow


def _row(k, s, t, sp, sigma, h="1"):
    return TableRow(k, mpf(s), mpf(t), mpf(sp), mpf(sigma), mpf(h))


@pytest.mark.unit
class TestCheckOrderings:
    """``s_k < sigma_k < t_k`` asserted, ``t_k < s'_k`` asserted except k = 2."""

    def test_pass(self):
        """Test a well-ordered row passes."""
        report = check_orderings([_row(7, "1.01", "1.05", "1.06", "1.02")])
        assert report.ok
        assert report.passed == 1

    def test_k2_exception_reported(self):
        """Test t_2 > s'_2 is reported, not failed."""
        assert 2 in UNASSERTED_T_ORDERING
        report = check_orderings([_row(2, "1.11", "1.41", "1.40", "1.14")])
        assert report.ok
        assert report.checks[0].status == "report"
        assert not report.checks[0].t_below_s_prime

    def test_t_ordering_enforced_elsewhere(self):
        """Test t_k > s'_k fails for k != 2."""
        report = check_orderings([_row(3, "1.05", "1.30", "1.20", "1.10")])
        assert not report.ok
        assert report.checks[0].sigma_bracketed

    def test_sigma_outside_bracket(self):
        """Test sigma_k outside (s_k, t_k) fails."""
        report = check_orderings([_row(5, "1.05", "1.10", "1.20", "1.15")])
        assert report.checks[0].status == "fail"
        assert not report.checks[0].sigma_bracketed


@pytest.mark.unit
@pytest.mark.error_handling
class TestTableErrors:
    """Failures while assembling rows."""

    def test_root_failure_names_family(self, ctx, monkeypatch):
        """Test a root failure carries its k and family."""
        def failing(k, ctx):
            raise BracketError("root bracket does not change sign", family="sk", k=k)

        monkeypatch.setattr(table, "aux_root_s_k", failing)
        with pytest.raises(RootFailure) as excinfo:
            table_row(4, ctx)
        assert (excinfo.value.k, excinfo.value.family) == (4, "sk")
        assert isinstance(excinfo.value.__cause__, BracketError)

    @pytest.mark.parametrize(
        ("kmax", "workers"), [(1, 1), (21, 1), (5, 0)]
    )
    def test_bad_arguments(self, ctx, kmax, workers):
        """Test kmax outside 2..20 or zero workers raises DomainError."""
        with pytest.raises(DomainError):
            build_table(kmax, ctx, workers=workers)
