# ═══════════════════════════════════════════════════════════════════════════════
# iQuantum Engine: Command Line Tests
# ═══════════════════════════════════════════════════════════════════════════════

import json

import pytest

from app import cli
from config.constants import CACHE_DIR_ENV
from core import udouble


@pytest.fixture(autouse=True)
def isolated(monkeypatch, tmp_path):
    monkeypatch.setenv(CACHE_DIR_ENV, str(tmp_path / "cache"))
    udouble.clear_cache()
    yield
    udouble.clear_cache()


def write_datum(tmp_path, **data):
    path = tmp_path / "datum.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


# ─────────────────────────────────────────────────────────────────────────────
# ARGUMENTS & PRESETS
# ─────────────────────────────────────────────────────────────────────────────

class TestArguments:
    def test_no_command(self):
        assert cli.main([]) == cli.EXIT_USAGE

    def test_help(self):
        assert cli.main(["--help"]) == cli.EXIT_OK

    def test_verify_help_lists_suites(self, capsys):
        assert cli.main(["verify", "--help"]) == cli.EXIT_OK
        out = capsys.readouterr().out
        assert "serre_lusztig" in out
        assert "Mutation sensitivity" in out

    def test_verify_help_explains_ranges(self, capsys):
        assert cli.main(["verify", "--help"]) == cli.EXIT_OK
        out = capsys.readouterr().out
        assert "ranges (--max-m):" in out
        assert "steps above the threshold 1 - c" in out
        assert "largest word degree" in out
        assert "--oracle-components" in out

    def test_bad_choice(self):
        assert cli.main(["verify", "--suite", "scalars", "--cartan", "a2-swap", "--method", "slow"]) == cli.EXIT_USAGE

    def test_presets(self, capsys):
        assert cli.main(["presets"]) == cli.EXIT_OK
        out = capsys.readouterr().out
        assert "a2-swap" in out
        assert "a3-tau13" in out


class TestCheckCartan:
    def test_valid_preset(self, capsys):
        assert cli.main(["check-cartan", "--cartan", "a2-swap"]) == cli.EXIT_OK
        assert "a2-swap: valid (rank 2, tau=[2, 1])" in capsys.readouterr().out

    def test_file_name_defaults_to_stem(self, tmp_path, capsys):
        source = write_datum(tmp_path, cartan=[[2, 0], [0, 2]], symmetrizer=[1, 1], tau=[2, 1])
        assert cli.main(["check-cartan", "--cartan", source]) == cli.EXIT_OK
        assert "datum: valid" in capsys.readouterr().out

    def test_violations_listed(self, tmp_path, capsys):
        source = write_datum(tmp_path, cartan=[[2, -1], [-2, 2]], symmetrizer=[1, 1], tau=[1, 2])
        assert cli.main(["check-cartan", "--cartan", source]) == cli.EXIT_FAIL
        assert "DC not symmetric at (1,2)" in capsys.readouterr().out

    def test_unknown_source(self, capsys):
        assert cli.main(["check-cartan", "--cartan", "no-such-datum"]) == cli.EXIT_FAIL
        assert "neither a preset" in capsys.readouterr().out


# ─────────────────────────────────────────────────────────────────────────────
# VERIFY
# ─────────────────────────────────────────────────────────────────────────────

class TestVerify:
    def test_unknown_suite(self, capsys):
        assert cli.main(["verify", "--suite", "nope", "--cartan", "a2-swap"]) == cli.EXIT_USAGE
        assert "Unknown suite: nope" in capsys.readouterr().err

    def test_invalid_datum(self, tmp_path):
        source = write_datum(tmp_path, cartan=[[2, 0], [0, 2]], symmetrizer=[1, 1], tau=[1, 1])
        assert cli.main(["verify", "--suite", "scalars", "--cartan", source]) == cli.EXIT_FAIL

    def test_records_are_reproducible(self, capsys):
        argv = ["verify", "--suite", "scalars", "--cartan", "a2-swap", "--format", "records", "--no-cache"]
        assert cli.main(argv) == cli.EXIT_OK
        first = capsys.readouterr().out
        assert cli.main(argv) == cli.EXIT_OK
        assert capsys.readouterr().out == first
        records = [json.loads(line) for line in first.splitlines()]
        assert len(records) == 71
        assert all(r["status"] == "pass" for r in records)

    def test_out_file_and_cache(self, tmp_path):
        out = tmp_path / "report.txt"
        argv = ["verify", "--suite", "bkl", "--cartan", "a2-swap", "--out", str(out)]
        assert cli.main(argv) == cli.EXIT_OK
        assert "Overall: OK" in out.read_text(encoding="utf-8")
        assert list((tmp_path / "cache").glob("*.json"))

    def test_store_is_removed_after_run(self, tmp_path):
        cli.main(["verify", "--suite", "scalars", "--cartan", "a2-swap", "--out", str(tmp_path / "r.txt")])
        assert udouble._store is None

    def test_fast_records_carry_modular_verdict(self, capsys):
        argv = ["verify", "--suite", "bkl", "--cartan", "a1xa1-swap", "--method", "fast"]
        argv += ["--format", "records", "--no-cache"]
        assert cli.main(argv) == cli.EXIT_OK
        record = json.loads(capsys.readouterr().out)
        assert record["method"] == "modular+exact"
        assert record["modular_zero"] is True

    def test_oracle_components_flag(self, capsys):
        argv = ["verify", "--suite", "bkl", "--cartan", "a1xa1-swap", "--oracle-components"]
        argv += ["--format", "records", "--no-cache"]
        assert cli.main(argv) == cli.EXIT_OK
        record = json.loads(capsys.readouterr().out)
        assert record["status"] == "pass"
        assert record["modular_zero"] is None


# ─────────────────────────────────────────────────────────────────────────────
# REDUCE
# ─────────────────────────────────────────────────────────────────────────────

class TestReduce:
    def test_relation_reduces_to_zero(self, capsys):
        expr = "E1*F1 - F1*E1 - (K1 - Kp1)/(q - q^-1)"
        assert cli.main(["reduce", "--cartan", "a2-swap", "--expr", expr]) == cli.EXIT_OK
        assert capsys.readouterr().out.strip() == "0"

    def test_scalar(self, capsys):
        assert cli.main(["reduce", "--cartan", "a2-swap", "--expr", "q*q^-1 + 1"]) == cli.EXIT_OK
        assert capsys.readouterr().out.strip() == "2"

    def test_iquantum_expression(self, capsys):
        assert cli.main(["reduce", "--cartan", "a2-swap", "--expr", "B1"]) == cli.EXIT_OK
        assert capsys.readouterr().out.strip() == "q^-1*Kp1*E2 + F1"

    def test_modular(self, capsys):
        argv = ["reduce", "--cartan", "a2-swap", "--expr", "B1*B2 - B2*B1", "--modular"]
        assert cli.main(argv) == cli.EXIT_OK
        assert capsys.readouterr().out.strip() == "nonzero"

    def test_parse_error(self, capsys):
        assert cli.main(["reduce", "--cartan", "a2-swap", "--expr", "E1 +"]) == cli.EXIT_USAGE
        assert "parse error" in capsys.readouterr().err
