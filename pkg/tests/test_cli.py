"""Command-line interface: exit codes, output formats, schema stability."""

import json

import pytest

from ratiocert.cli import (
    EXIT_OK,
    EXIT_UNDECIDED,
    EXIT_USAGE,
    EXIT_VIOLATIONS,
    UsageError,
    main,
    parse_sequence_token,
)
from ratiocert.sequences import Derangement, Harmonic, Lucas, Primes, Product

SCHEMA_KEYS = {
    "schema_version", "command", "config", "results",
    "violations", "undecided", "stats", "wall_ms",
}


def run_json(capsys, argv):
    code = main(argv + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestSequenceTokens:
    def test_plain_names(self):
        assert parse_sequence_token("fibonacci") == Lucas(1, -1)
        assert isinstance(parse_sequence_token("derangement"), Derangement)
        assert isinstance(parse_sequence_token("primes"), Primes)

    def test_parameterized(self):
        assert parse_sequence_token("lucas:3,2") == Lucas(3, 2)
        assert parse_sequence_token("lucas(3,2)") == Lucas(3, 2)
        assert parse_sequence_token("harmonic:2") == Harmonic(2)
        assert parse_sequence_token("harmonic(7)") == Harmonic(7)

    def test_nested_product(self):
        p = parse_sequence_token("product(fibonacci,lucas(3,2))")
        assert isinstance(p, Product)
        assert p.left == Lucas(1, -1) and p.right == Lucas(3, 2)
        q = parse_sequence_token("product(product(fibonacci,fibonacci),harmonic(2))")
        assert isinstance(q.left, Product)

    def test_bad_tokens(self):
        for token in ("nosuch", "lucas:1", "harmonic", "product(fibonacci)",
                      "lucas:a,b", "lucas:2,1"):
            with pytest.raises(UsageError):
                parse_sequence_token(token)


class TestExitCodes:
    def test_certified_scan(self):
        assert main(["check", "--seq", "fibonacci", "--from", "4", "--to", "100",
                     "--direction", "decreasing"]) == EXIT_OK

    def test_violations(self):
        assert main(["check", "--seq", "fibonacci", "--from", "1", "--to", "40",
                     "--direction", "decreasing"]) == EXIT_VIOLATIONS

    def test_usage_errors(self):
        bad_cases = [
            ["check", "--seq", "fibonacci", "--from", "4", "--to", "5",
             "--direction", "decreasing"],
            ["check", "--seq", "fibonacci", "--from", "0", "--to", "50",
             "--direction", "decreasing"],
            ["check", "--seq", "nosuch", "--from", "1", "--to", "50",
             "--direction", "decreasing"],
            ["check", "--seq", "fibonacci", "--from", "4", "--to", "50",
             "--direction", "decreasing", "--precision-cap", "64"],
            ["check", "--seq", "fibonacci", "--from", "4", "--to", "50"],
            ["table", "--seq", "fibonacci"],
            ["table", "--seq", "fibonacci", "--indices", "x,y"],
            ["nosuchcommand"],
            [],
        ]
        for argv in bad_cases:
            assert main(argv) == EXIT_USAGE, argv

    def test_help_exits_zero(self):
        assert main(["--help"]) == EXIT_OK

    def test_undecided_scan(self, capsys):
        # starved engine: no exact fallback and a floor-level cap
        code, doc = run_json(
            capsys,
            ["check", "--seq", "primes", "--from", "900", "--to", "910",
             "--direction", "decreasing", "--precision-cap", "128",
             "--start-bits", "128", "--exact-budget", "1"],
        )
        del doc
        assert code in (EXIT_VIOLATIONS, EXIT_UNDECIDED)

    def test_find_start_none_is_violation_exit(self):
        assert main(["find-start", "--seq", "primes", "--horizon", "100",
                     "--direction", "decreasing"]) == EXIT_VIOLATIONS


class TestJsonSchema:
    def test_check_document(self, capsys):
        code, doc = run_json(
            capsys,
            ["check", "--seq", "fibonacci", "--from", "1", "--to", "60",
             "--direction", "decreasing"],
        )
        assert code == EXIT_VIOLATIONS
        assert set(doc) == SCHEMA_KEYS
        assert doc["schema_version"] == 1
        assert doc["command"] == "check"
        assert doc["violations"] == [1, 3]
        assert doc["undecided"] == []
        assert set(doc["stats"]) == {"exact", "interval", "max_bits"}
        assert isinstance(doc["wall_ms"], int)
        assert doc["results"][0]["min_valid_start"] == 4

    def test_find_start_document(self, capsys):
        code, doc = run_json(
            capsys,
            ["find-start", "--seq", "fibonacci", "--horizon", "200",
             "--direction", "decreasing"],
        )
        assert code == EXIT_OK
        assert set(doc) == SCHEMA_KEYS
        assert doc["results"][0]["min_start"] == 4
        assert "empirical" in doc["results"][0]["note"]

    def test_paper_suite_document(self, capsys):
        code, doc = run_json(
            capsys,
            ["paper-suite", "--prime-horizon", "120", "--offset-max", "12",
             "--stirling-max", "12"],
        )
        assert code == EXIT_OK
        assert set(doc) == SCHEMA_KEYS
        assert all(r["status"] == "certified" for r in doc["results"])

    def test_table_document(self, capsys):
        code, doc = run_json(
            capsys,
            ["table", "--seq", "fibonacci", "--indices", "10,100"],
        )
        assert code == EXIT_OK
        rows = doc["results"]
        assert [r["n"] for r in rows] == [10, 100]
        for row in rows:
            assert row["ln_r_lo"] <= row["ln_r_hi"]


class TestDeterminismAndSharding:
    def test_repeat_runs_identical(self, capsys):
        argv = ["check", "--seq", "derangement", "--from", "2", "--to", "80",
                "--direction", "decreasing"]
        _, a = run_json(capsys, argv)
        _, b = run_json(capsys, argv)
        a.pop("wall_ms"), b.pop("wall_ms")
        assert a == b

    def test_jobs_do_not_change_results(self, capsys):
        base = ["check", "--seq", "fibonacci", "--from", "1", "--to", "150",
                "--direction", "decreasing"]
        _, seq = run_json(capsys, base + ["--jobs", "1"])
        _, par = run_json(capsys, base + ["--jobs", "3"])
        for doc in (seq, par):
            doc.pop("wall_ms")
            doc["config"].pop("jobs")
        assert seq == par


class TestOutputFormats:
    def test_text_mentions_results(self, capsys):
        main(["check", "--seq", "fibonacci", "--from", "1", "--to", "40",
              "--direction", "decreasing"])
        out = capsys.readouterr().out
        assert "violations: [1, 3]" in out
        assert "NOT CERTIFIED" in out
        assert out.endswith("\n") and "\r\n" not in out

    def test_csv_scan(self, capsys):
        main(["check", "--seq", "fibonacci", "--from", "1", "--to", "40",
              "--direction", "decreasing", "--format", "csv"])
        out = capsys.readouterr().out
        lines = out.strip().split("\n")
        assert lines[0] == "n,kind"
        assert "1,violation" in lines and "3,violation" in lines

    def test_csv_table(self, capsys):
        main(["table", "--seq", "fibonacci", "--from", "10", "--to", "14",
              "--format", "csv"])
        out = capsys.readouterr().out
        lines = out.strip().split("\n")
        assert lines[0] == "n,ln_r_lo,ln_r_hi,method"
        assert len(lines) == 6

    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "report.json"
        code = main(["check", "--seq", "fibonacci", "--from", "4", "--to", "40",
                     "--direction", "decreasing", "--format", "json",
                     "--out", str(target)])
        assert code == EXIT_OK
        assert capsys.readouterr().out == ""
        doc = json.loads(target.read_text(encoding="utf-8"))
        assert doc["command"] == "check"

    def test_text_and_json_agree(self, capsys):
        argv = ["check", "--seq", "fibonacci", "--from", "1", "--to", "60",
                "--direction", "decreasing"]
        main(argv)
        text = capsys.readouterr().out
        _, doc = run_json(capsys, argv)
        assert f"violations: {doc['violations']}" in text
        assert f"min_valid_start: {doc['results'][0]['min_valid_start']}" in text


class TestEnvironmentVariable:
    def test_env_cap_applies(self, capsys, monkeypatch):
        monkeypatch.setenv("RATIOCERT_MAX_BITS", "256")
        _, doc = run_json(
            capsys,
            ["check", "--seq", "fibonacci", "--from", "4", "--to", "40",
             "--direction", "decreasing"],
        )
        assert doc["config"]["precision_cap"] == 256

    def test_explicit_flag_wins(self, capsys, monkeypatch):
        monkeypatch.setenv("RATIOCERT_MAX_BITS", "256")
        _, doc = run_json(
            capsys,
            ["check", "--seq", "fibonacci", "--from", "4", "--to", "40",
             "--direction", "decreasing", "--precision-cap", "512"],
        )
        assert doc["config"]["precision_cap"] == 512

    def test_env_validation(self, monkeypatch):
        monkeypatch.setenv("RATIOCERT_MAX_BITS", "not-a-number")
        assert main(["check", "--seq", "fibonacci", "--from", "4", "--to", "40",
                     "--direction", "decreasing"]) == EXIT_USAGE
        monkeypatch.setenv("RATIOCERT_MAX_BITS", "64")
        assert main(["check", "--seq", "fibonacci", "--from", "4", "--to", "40",
                     "--direction", "decreasing"]) == EXIT_USAGE

    def test_tight_env_cap_makes_suite_undecided(self, capsys, monkeypatch):
        monkeypatch.setenv("RATIOCERT_MAX_BITS", "128")
        code, doc = run_json(
            capsys,
            ["paper-suite", "--prime-horizon", "120", "--offset-max", "60",
             "--stirling-max", "12"],
        )
        assert code == EXIT_UNDECIDED
        assert doc["undecided"]
