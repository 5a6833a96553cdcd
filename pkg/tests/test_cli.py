"""Command-line behaviour: exit codes, determinism, JSON schema."""

import json
import subprocess
import sys

import pytest

import k3mukai.checks
from k3mukai.cli import ReportRecord, build_parser, main, ledger_checks


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExitCodes:
    def test_success(self, capsys):
        code, out, _ = run_cli(capsys, "verify-paper", "--g", "2", "--n", "2")
        assert code == 0
        assert "checks passed" in out

    def test_usage_error_small_g(self, capsys):
        code, _, err = run_cli(capsys, "verify-paper", "--g", "1")
        assert code == 2
        assert "at least 2" in err

    def test_usage_error_unknown_flag(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify-paper", "--bogus"])
        assert exc.value.code == 2

    def test_usage_error_bad_vector(self, capsys):
        code, _, err = run_cli(capsys, "pair", "--v", "1,2", "--u", "1,0,1", "--c2", "8")
        assert code == 2
        assert "r,c,s" in err

    def test_usage_error_odd_c2(self, capsys):
        code, _, err = run_cli(capsys, "square", "--v", "1,0,1", "--c2", "7")
        assert code == 2
        assert "even" in err

    def test_verification_failure_is_exit_one(self, capsys, monkeypatch):
        # sabotage one check so the ledger honestly reports a failure
        original = k3mukai.checks.extension_square

        def broken(n, g):
            result = original(n, g)
            return type(result)(
                result.name, result.computed, result.claimed + 1, False, result.context
            )

        monkeypatch.setattr("k3mukai.cli.extension_square", broken)
        code, out, _ = run_cli(capsys, "verify-paper", "--g", "2", "--n", "2")
        assert code == 1
        assert "FAIL" in out


class TestPairAndSquare:
    def test_pair_value(self, capsys):
        code, out, _ = run_cli(
            capsys, "pair", "--v", "2,1,2", "--u", "2,1,2", "--c2", "8", "--json"
        )
        assert code == 0
        record = json.loads(out)
        assert record["outputs"]["pairing"] == 0

    def test_square_value(self, capsys):
        code, out, _ = run_cli(capsys, "square", "--v", "1,0,-1", "--c2", "8", "--json")
        record = json.loads(out)
        assert record["outputs"]["square"] == 2


class TestIsotropic:
    def test_motivating_example(self, capsys):
        code, out, _ = run_cli(
            capsys, "isotropic", "--c2", "8", "--g", "2", "--bound", "10", "--json"
        )
        record = json.loads(out)
        assert record["outputs"]["classes"] == [{"a": 1, "b": 2}, {"a": 1, "b": -2}]
        assert record["outputs"]["exists_nontrivial"] is True

    def test_empty(self, capsys):
        code, out, _ = run_cli(
            capsys, "isotropic", "--c2", "4", "--g", "2", "--bound", "50", "--json"
        )
        record = json.loads(out)
        assert record["outputs"]["classes"] == []
        assert record["outputs"]["exists_nontrivial"] is False


class TestDual:
    def test_report_fields(self, capsys):
        code, out, _ = run_cli(capsys, "dual", "--g", "2", "--n", "2", "--json")
        record = json.loads(out)
        outputs = record["outputs"]
        assert outputs["w"] == {"r": 2, "c": [1], "s": 2}
        assert outputs["d_square"] == 2
        assert outputs["gerbe_order"] == 2
        assert outputs["base_dim"] == 2
        assert outputs["fine"] is False
        solutions = outputs["solutions"]
        assert all(sol["de"] == 1 - 2 * sol["k"] for sol in solutions)
        assert all(sol["e2"] == 4 * sol["l"] for sol in solutions)


class TestCriterion:
    def test_default_vector_from_g_n(self, capsys):
        code, out, _ = run_cli(
            capsys, "criterion", "--g", "2", "--n", "2", "--bound", "5", "--json"
        )
        record = json.loads(out)
        hits = record["outputs"]["hits"]
        assert {"w": {"r": 2, "c": [1], "s": 2}, "branch": "dual-surface",
                "d_square": 2, "gerbe_order": 2} in hits

    def test_explicit_vector_needs_c2(self, capsys):
        code, _, err = run_cli(capsys, "criterion", "--v", "1,0,-1")
        assert code == 2


class TestEquiv:
    def test_picard_family_comparison(self, capsys):
        code, out, _ = run_cli(
            capsys, "equiv", "--g", "2", "--n", "2", "--d", "2", "--json"
        )
        record = json.loads(out)
        assert record["outputs"]["verdict"] == "not_equivalent"
        assert record["outputs"]["certificate"] == "determinant"

    def test_raw_forms(self, capsys):
        code, out, _ = run_cli(
            capsys, "equiv", "--f1", "8,0,-2", "--f2", "8,0,-2", "--bound", "2",
            "--json",
        )
        record = json.loads(out)
        assert record["outputs"]["verdict"] == "equivalent"
        assert "witness" in record["outputs"]

    def test_missing_inputs(self, capsys):
        code, _, err = run_cli(capsys, "equiv", "--g", "2")
        assert code == 2


class TestVerifyPaper:
    def test_motivating_record_present(self, capsys):
        code, out, _ = run_cli(capsys, "verify-paper", "--g", "2", "--n", "2", "--json")
        assert code == 0
        records = [json.loads(line) for line in out.splitlines()]
        summary = [
            r for r in records if r["inputs"].get("check") == "dual_surface"
        ]
        assert len(summary) == 1
        outputs = summary[0]["outputs"]
        assert outputs["w"] == {"r": 2, "c": [1], "s": 2}
        assert outputs["d_square"] == 2
        assert outputs["gerbe_order"] == 2
        assert all(r["pass"] for r in records)

    def test_every_line_parses_independently(self, capsys):
        _, out, _ = run_cli(capsys, "verify-paper", "--g", "3", "--n", "2", "--json")
        for line in out.splitlines():
            record = json.loads(line)
            assert set(record) == {"command", "inputs", "outputs", "pass"}

    def test_json_round_trip(self, capsys):
        _, out, _ = run_cli(capsys, "verify-paper", "--g", "2", "--n", "3", "--json")
        for line in out.splitlines():
            assert ReportRecord.from_json(line).to_json() == line


class TestCensus:
    def test_single_row(self, capsys):
        code, out, _ = run_cli(capsys, "census", "--g-max", "2", "--n-max", "2", "--json")
        record = json.loads(out)
        assert record["inputs"] == {"g": 2, "n": 2}
        assert record["outputs"]["c2"] == 8
        assert record["outputs"]["d_square"] == 2
        assert record["outputs"]["gerbe_order"] == 2

    def test_genus_three_row(self, capsys):
        _, out, _ = run_cli(capsys, "census", "--g-max", "3", "--n-max", "2", "--json")
        rows = [json.loads(line) for line in out.splitlines()]
        row = next(r for r in rows if r["inputs"] == {"g": 3, "n": 2})
        assert row["outputs"]["c2"] == 16
        assert row["outputs"]["d_square"] == 4

    def test_json_round_trip_without_pass_field(self, capsys):
        _, out, _ = run_cli(capsys, "census", "--g-max", "3", "--n-max", "3", "--json")
        for line in out.splitlines():
            record = ReportRecord.from_json(line)
            assert record.passed is None
            assert record.to_json() == line

    def test_row_order_deterministic(self, capsys):
        _, out, _ = run_cli(capsys, "census", "--g-max", "4", "--n-max", "3", "--json")
        keys = [
            (json.loads(line)["inputs"]["g"], json.loads(line)["inputs"]["n"])
            for line in out.splitlines()
        ]
        assert keys == sorted(keys)

    def test_parallel_matches_serial(self, capsys):
        _, serial, _ = run_cli(capsys, "census", "--g-max", "5", "--n-max", "5")
        _, parallel, _ = run_cli(
            capsys, "census", "--g-max", "5", "--n-max", "5", "--jobs", "4"
        )
        assert serial == parallel

    def test_table_and_json_carry_identical_data(self, capsys):
        _, table, _ = run_cli(capsys, "census", "--g-max", "3", "--n-max", "3")
        _, stream, _ = run_cli(capsys, "census", "--g-max", "3", "--n-max", "3", "--json")
        table_lines = table.splitlines()
        header = table_lines[0]
        columns = header.split()
        # columns are left-aligned below their header names
        starts = [header.index(col) for col in columns]
        ends = starts[1:] + [None]

        def cell(line, i):
            return line[starts[i] : ends[i]].strip()

        records = [json.loads(line) for line in stream.splitlines()]
        assert len(table_lines) - 1 == len(records)
        for line, record in zip(table_lines[1:], records):
            merged = {**record["inputs"], **record["outputs"]}
            for column in ("g", "n", "c2", "d_square", "gerbe_order", "base_dim"):
                assert cell(line, columns.index(column)) == str(merged[column])
            assert cell(line, columns.index("fine")) == (
                "true" if merged["fine"] else "false"
            )
            w = merged["w"]
            assert cell(line, columns.index("w")) == f"({w['r']}, {w['c'][0]}, {w['s']})"


class TestDeterminism:
    def test_repeated_runs_byte_identical(self, capsys):
        _, first, _ = run_cli(capsys, "verify-paper", "--g", "2", "--n", "2")
        _, second, _ = run_cli(capsys, "verify-paper", "--g", "2", "--n", "2")
        assert first == second

    def test_subprocess_runs_byte_identical(self):
        cmd = [sys.executable, "-m", "k3mukai", "census", "--g-max", "3", "--n-max", "3"]
        first = subprocess.run(cmd, capture_output=True, check=True)
        second = subprocess.run(cmd, capture_output=True, check=True)
        assert first.stdout == second.stdout
        assert first.stdout


class TestParser:
    def test_all_subcommands_registered(self):
        parser = build_parser()
        text = parser.format_help()
        for name in (
            "pair",
            "square",
            "isotropic",
            "dual",
            "criterion",
            "equiv",
            "verify-paper",
            "census",
        ):
            assert name in text


def test_ledger_checks_cover_every_advertised_check():
    records = ledger_checks([2], [2])
    names = {record.inputs["check"] for record in records}
    assert names == {
        "dual_surface",
        "w_isotropic",
        "w_primitive",
        "gerbe_order",
        "dual_curve_square",
        "euler_characteristic",
        "base_dimension",
        "fujiki_isotropic_degree",
        "fujiki_ample_degree",
        "fujiki_constant_degree",
        "double_dual_square",
        "extension_square",
        "kernel_square",
        "kernel_square_bound",
        "torsion_degree",
        "tensor_degree",
        "brill_noether_unit",
        "picard_determinants",
        "picard_form_inequivalence",
        "transform_constraints",
    }
