"""Tests for the translated-sums command line."""

import csv
import io
import json

import pytest
from mpmath import mpf

from interfaces.shared_types.errors import BracketError, ConvergenceError
from interfaces.shared_types.records import RECORD_FIELDS
from interfaces.shared_types.table import SuiteCheck, SuiteOutcome, TableRow
from translated import __version__, cli
from translated.responses import TABLE_HEADER


def _outcome(status: str) -> SuiteOutcome:
    return SuiteOutcome("envelope", (SuiteCheck("step", mpf("0.5"), status),))


@pytest.mark.unit
class TestParser:
    """Argument parsing."""

    def test_version(self, capsys):
        """Test --version prints the package version."""
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["--version"])
        assert excinfo.value.code == 0
        assert __version__ in capsys.readouterr().out

    @pytest.mark.error_handling
    @pytest.mark.parametrize(
        "argv",
        [[], ["roots", "bogus"], ["eval", "Q"], ["table", "--kmax", "x"]],
    )
    def test_usage_errors_exit_3(self, argv, capsys):
        """Test malformed command lines exit with the usage code."""
        with pytest.raises(SystemExit) as excinfo:
            cli.main(argv)
        assert excinfo.value.code == cli.EXIT_USAGE
        assert "error" in capsys.readouterr().err

    def test_common_flags_on_subcommands(self):
        """Test shared flags parse after the subcommand."""
        args = cli.build_parser().parse_args(
            ["verify", "oracle", "--limit", "1000", "--format", "json"]
        )
        assert (args.suite, args.limit, args.format) == ("oracle", 1000, "json")


@pytest.mark.unit
class TestEval:
    """``eval`` subcommand."""

    def test_prime_zeta_csv(self, capsys):
        """Test eval P writes a CSV record."""
        argv = ["eval", "P", "--s", "2", "--format", "csv", "--digits", "5"]
        status = cli.main(argv)
        assert status == cli.EXIT_OK
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert tuple(rows[0]) == RECORD_FIELDS
        assert rows[1][:4] == ["constant", "P(2)", "", "0.45225"]

    def test_almost_prime_with_derivative_json(self, capsys):
        """Test eval Pk --derivative writes two JSON records."""
        argv = ["eval", "Pk", "--k", "2", "--s", "2", "--derivative"]
        argv += ["--format", "json"]
        assert cli.main(argv) == cli.EXIT_OK
        document = json.loads(capsys.readouterr().out)
        names = [record["name"] for record in document["records"]]
        assert names == ["P_k(2)", "P_k'(2)"]
        assert document["records"][1]["value"].startswith("-")
        assert document["meta"]["precision"] == 30

    @pytest.mark.error_handling
    @pytest.mark.parametrize(
        "argv",
        [
            ["eval", "P"],
            ["eval", "Pk", "--s", "2"],
            ["eval", "f"],
            ["eval", "P", "--s", "1"],
            ["eval", "f", "--k", "2", "--h", "-1"],
            ["roots", "sk"],
            ["roots", "sk", "--k", "21"],
            ["eval", "P", "--s", "2", "--precision", "10"],
            ["eval", "P", "--s", "2", "--workers", "0"],
        ],
    )
    def test_domain_errors_exit_3(self, argv, capsys):
        """Test invalid arguments exit with the usage code."""
        assert cli.main(argv) == cli.EXIT_USAGE
        assert "translated-sums" in capsys.readouterr().err


@pytest.mark.unit
class TestRoots:
    """``roots`` subcommand."""

    def test_s_2(self, capsys):
        """Test roots sk prints s_2."""
        assert cli.main(["roots", "sk", "--k", "2", "--digits", "5"]) == cli.EXIT_OK
        assert capsys.readouterr().out.startswith("s_k [k=2]: 1.11313")

    @pytest.mark.error_handling
    @pytest.mark.parametrize("error", [BracketError, ConvergenceError])
    def test_computation_failure_exit_1(self, monkeypatch, capsys, error):
        """Test root failures exit with the computation code."""
        def failing(k, ctx):
            raise error("no sign change", family="sk", k=k)

        monkeypatch.setitem(cli.ROOT_FAMILIES, "sk", failing)
        assert cli.main(["roots", "sk", "--k", "2"]) == cli.EXIT_COMPUTATION
        assert "no sign change" in capsys.readouterr().err


@pytest.mark.unit
class TestTableAndVerify:
    """``table`` and ``verify`` with the heavy computation stubbed out."""

    def test_table_csv(self, monkeypatch, capsys):
        """Test table forwards its options and writes CSV."""
        row = TableRow(2, mpf("1.1"), mpf("1.4"), mpf("1.3"), mpf("1.2"), mpf("1.0"))
        seen = {}

        def fake_build(kmax, ctx, *, workers):
            seen.update(kmax=kmax, workers=workers, digits=ctx.digits)
            return [row]

        monkeypatch.setattr(cli, "build_table", fake_build)
        argv = ["table", "--kmax", "2", "--workers", "2", "--precision", "40"]
        assert cli.main([*argv, "--format", "csv", "--digits", "2"]) == cli.EXIT_OK
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert tuple(rows[0]) == TABLE_HEADER
        assert rows[1] == ["2", "1.10", "1.40", "1.30", "1.20", "1.00"]
        assert seen == {"kmax": 2, "workers": 2, "digits": 40}

    @pytest.mark.parametrize(
        ("status", "code"), [("pass", cli.EXIT_OK), ("fail", cli.EXIT_VERIFICATION)]
    )
    def test_verify_exit_codes(self, monkeypatch, capsys, status, code):
        """Test verify maps suite status to the exit code."""
        monkeypatch.setattr(cli, "run_suite", lambda *a, **kw: _outcome(status))
        assert cli.main(["verify", "envelope"]) == code
        out = capsys.readouterr().out
        assert f"step: 0.500000  {status.upper()}" in out
        assert out.rstrip().endswith(")")

    def test_verify_passes_limit(self, monkeypatch, capsys):
        """Test verify forwards --limit and writes JSON."""
        seen = {}

        def fake_run(name, ctx, *, limit, workers):
            seen.update(name=name, limit=limit, workers=workers)
            return _outcome("report")

        monkeypatch.setattr(cli, "run_suite", fake_run)
        argv = ["verify", "oracle", "--limit", "5000", "--format", "json"]
        assert cli.main(argv) == cli.EXIT_OK
        document = json.loads(capsys.readouterr().out)
        assert document["records"][0]["status"] == "report"
        assert seen == {"name": "oracle", "limit": 5000, "workers": 1}
