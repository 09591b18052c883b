"""End-to-end runs of the verification suites."""

import json

import pytest
from mpmath import mpf

from core.service.suites import (
    SUITES,
    envelope_suite,
    oracle_suite,
    orderings_suite,
    run_suite,
    theorem2_suite,
    zhang_suite,
)
from interfaces.shared_types.errors import DomainError
from translated import cli

pytestmark = pytest.mark.integration


class TestDispatch:
    """Suite registry."""

    def test_registered(self):
        """Test every suite name is registered."""
        assert set(SUITES) == {"orderings", "theorem2", "envelope", "oracle", "zhang"}

    @pytest.mark.error_handling
    def test_unknown_suite(self, ctx):
        """Test an unknown suite raises DomainError."""
        with pytest.raises(DomainError):
            run_suite("nope", ctx)


@pytest.mark.slow
class TestSuites:
    """Each suite passes at default precision."""

    def test_envelope(self, ctx):
        """Test the envelope suite passes with one reported check."""
        outcome = envelope_suite(ctx)
        assert outcome.ok
        assert outcome.count("report") == 1
        assert outcome.count("fail") == 0

    @pytest.mark.oracle
    def test_oracle_small_limit(self, ctx):
        """Test the oracle suite passes up to 10^5."""
        outcome = oracle_suite(ctx, limit=10**5)
        assert outcome.ok, [c.name for c in outcome.checks if c.status == "fail"]
        assert outcome.count("pass") >= 20

    @pytest.mark.published
    def test_orderings(self, ctx, table_rows):
        """Test the orderings suite over the full table."""
        outcome = orderings_suite(ctx, rows=table_rows)
        assert outcome.ok
        assert (outcome.count("pass"), outcome.count("report")) == (18, 1)

    @pytest.mark.published
    def test_theorem2(self, ctx, table_rows, samples):
        """Test the lower-bound chain reports its constants."""
        outcome = theorem2_suite(ctx, rows=table_rows, samples=samples)
        assert outcome.ok
        names = {check.name for check in outcome.checks}
        expected = {"alpha", "h_2", "f(N_1, h_2)", "f(N_1, 1.04466)", "ell_inf"}
        assert expected <= names

    @pytest.mark.published
    def test_zhang(self, ctx):
        """Test f(N_1) > f(N_k) for k = 2..20 and the drift of f(N_20)."""
        outcome = zhang_suite(ctx)
        assert outcome.ok
        assert outcome.count("pass") == 19
        drift = next(c for c in outcome.checks if c.name == "f(N_20) - 1")
        assert abs(drift.value) < mpf("0.1")

    @pytest.mark.smoke
    def test_cli_verify_envelope(self, capsys):
        """Test verify envelope end to end through the CLI."""
        assert cli.main(["verify", "envelope", "--format", "json"]) == cli.EXIT_OK
        document = json.loads(capsys.readouterr().out)
        statuses = {record["status"] for record in document["records"]}
        assert statuses <= {"pass", "report"}
