"""Tests for the command-line interface: outputs, exit codes, golden help."""

import json
import os
import pathlib

import pytest

from wamls.cli import main
from wamls.problems import emit_instance, random_instance

DATA = pathlib.Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBoundCommand:
    def test_known_value(self, capsys):
        code, out, _ = run(capsys, "bound", "--alpha", "1", "--c", "1.363", "--beta", "1.1")
        assert code == 0
        amls_line = [ln for ln in out.splitlines() if ln.startswith("amls")][0]
        value = float(amls_line.split("=")[1].split("+/-")[0])
        assert value == pytest.approx(1.158, abs=2e-3)

    def test_beta_one_prints_brute_two(self, capsys):
        code, out, _ = run(capsys, "bound", "--alpha", "1", "--beta", "1")
        assert code == 0
        assert "brute(1) = 2.000000" in out

    def test_domain_error_exit_code(self, capsys):
        code, _, err = run(capsys, "bound", "--alpha", "0.5", "--beta", "1.5")
        assert code == 2
        assert "error" in err


class TestTableCommand:
    def test_vc_preset_values(self, capsys):
        code, out, _ = run(capsys, "table", "--preset", "vc")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("alpha,c,beta")
        rows = [ln.split(",") for ln in lines[1:]]
        by_key = {(r[0], r[2]): float(r[4]) for r in rows}
        assert by_key[("1", "1.1")] == pytest.approx(1.158, abs=2e-3)
        assert by_key[("2", "1.5")] == pytest.approx(1.208, abs=2e-3)

    def test_fvs_preset_row(self, capsys):
        code, out, _ = run(capsys, "table", "--preset", "fvs")
        assert code == 0
        rows = [ln.split(",") for ln in out.strip().splitlines()[1:]]
        by_key = {(r[0], r[2]): float(r[4]) for r in rows}
        assert by_key[("1", "1.5")] == pytest.approx(1.25, abs=2e-3)

    def test_empty_custom_grid_rejected(self, capsys):
        code, _, err = run(capsys, "table", "--alpha", "2", "--c", "1")
        assert code == 2

    def test_write_to_file(self, capsys, tmp_path):
        out_file = tmp_path / "t.csv"
        code, _, _ = run(
            capsys, "table", "--alpha", "2", "--c", "1", "--beta", "1.25",
            "--out", str(out_file),
        )
        assert code == 0
        assert out_file.read_text().count("\n") == 2


class TestFamilyCommand:
    def test_build_verify_round_trip(self, capsys, tmp_path):
        dump = tmp_path / "fam.txt"
        code, _, _ = run(
            capsys, "family", "build", "covering", "--n", "8", "--alpha", "2",
            "--out", str(dump),
        )
        assert code == 0
        code, out, _ = run(
            capsys, "family", "verify", "covering", "--n", "8", "--dump", str(dump)
        )
        assert code == 0
        assert "pass" in out

    def test_corrupted_dump_fails_with_witness(self, capsys, tmp_path):
        dump = tmp_path / "fam.txt"
        run(capsys, "family", "build", "covering", "--n", "6", "--alpha", "2",
            "--out", str(dump))
        lines = dump.read_text().splitlines()
        # Drop the full-universe line; only U can cover U.
        full = f"{(1 << 6) - 1:#x}"
        dump.write_text("\n".join(ln for ln in lines if ln != full) + "\n")
        code, out, _ = run(
            capsys, "family", "verify", "covering", "--n", "6", "--dump", str(dump)
        )
        assert code == 1
        assert out.startswith("FAIL: subset 0x")

    def test_weight_zero_instance_rejected(self, capsys, tmp_path):
        bad = tmp_path / "bad.wvc"
        bad.write_text("p wvc 1 0\nw 1 0\n")
        code, _, _ = run(
            capsys, "family", "build", "covering", "--instance", str(bad),
            "--alpha", "2",
        )
        assert code == 2

    def test_extension_build_verifies(self, capsys, tmp_path):
        inst = tmp_path / "i.wvc"
        inst.write_text(emit_instance(random_instance("wvc", 7, 0.3, seed=5)))
        dump = tmp_path / "fam.txt"
        code, _, _ = run(
            capsys, "family", "build", "extension", "--instance", str(inst),
            "--alpha", "1", "--c", "2", "--beta", "1.5", "--out", str(dump),
        )
        assert code == 0
        code, out, _ = run(
            capsys, "family", "verify", "extension", "--instance", str(inst),
            "--dump", str(dump),
        )
        assert code == 0


class TestSolveCommand:
    @pytest.fixture
    def vc_file(self, tmp_path):
        path = tmp_path / "i.wvc"
        path.write_text(emit_instance(random_instance("wvc", 12, 0.3, seed=7)))
        return str(path)

    def test_local_ratio_solve(self, capsys, vc_file):
        code, out, _ = run(
            capsys, "solve", vc_file, "--oracle", "local-ratio", "--beta", "1.9",
            "--force",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["ratio"] is not None and payload["ratio"] <= 1.9 + 1e-9

    def test_satisfied_instance(self, capsys, tmp_path):
        path = tmp_path / "i.wvc"
        path.write_text("p wvc 3 0\nw 1 1\nw 2 1\nw 3 1\n")
        code, out, _ = run(capsys, "solve", str(path), "--beta", "1.5")
        assert code == 0
        assert json.loads(out)["output_weight"] == 0

    def test_unknown_oracle(self, capsys, vc_file):
        code, _, _ = run(capsys, "solve", vc_file, "--oracle", "wizard")
        assert code == 2

    def test_report_file_written(self, capsys, vc_file, tmp_path):
        report = tmp_path / "r.json"
        code, out, _ = run(
            capsys, "solve", vc_file, "--beta", "1.5", "--report", str(report)
        )
        assert code == 0
        assert json.loads(report.read_text()) == json.loads(out)

    def test_max_n_cap_exit_code(self, capsys, vc_file):
        code, _, err = run(capsys, "solve", vc_file, "--beta", "1.5", "--max-n", "4")
        assert code == 3
        assert "resource" in err

    def test_env_cap_override(self, capsys, vc_file, monkeypatch):
        monkeypatch.setenv("WAMLS_MAX_N", "4")
        code, _, _ = run(capsys, "solve", vc_file, "--beta", "1.5")
        assert code == 3


class TestVerifyCommand:
    def test_bounds_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "bounds", "--trials", "3")
        assert code == 0
        assert "pass" in out

    def test_families_suite(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--suite", "families", "--trials", "5", "--max-n", "7"
        )
        assert code == 0

    def test_end_to_end_suite(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--suite", "end-to-end", "--trials", "5", "--max-n", "8"
        )
        assert code == 0


class TestHelpGolden:
    @pytest.mark.parametrize(
        "name,argv",
        [
            ("help_main.txt", ["--help"]),
            ("help_bound.txt", ["bound", "--help"]),
            ("help_solve.txt", ["solve", "--help"]),
        ],
    )
    def test_help_matches_golden(self, capsys, name, argv):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 0
        out = capsys.readouterr().out
        golden = (DATA / name).read_text()
        assert out == golden
