"""Command-line surface: subcommands, formats, determinism, exit codes."""

import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from lapspec.cli import build_parser, main
from lapspec.experiments import CSV_HEADER
from lapspec.linalg import SymmetricMatrix
from lapspec.models import BlockSpec, sample_block_laplacian, sample_laplacian

DATA = Path(__file__).parent / "data"


@pytest.fixture()
def in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


class TestMoments:
    def test_k2_exact_lines(self, capsys):
        assert main(["moments", "--k", "2"]) == 0
        assert capsys.readouterr().out == "m2 = 2\nm4 = 9\n"

    def test_k6_all_values(self, capsys):
        assert main(["moments", "--k", "6"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out == [
            "m2 = 2",
            "m4 = 9",
            "m6 = 56",
            "m8 = 431",
            "m10 = 3942",
            "m12 = 42136",
        ]

    def test_out_of_range_is_usage_error(self, capsys):
        assert main(["moments", "--k", "7"]) == 2
        assert "error" in capsys.readouterr().err


class TestBoundsFormula:
    def test_prints_both_bounds(self, capsys):
        assert main(["bounds", "--n", "100", "--eps", "1"]) == 0
        out = capsys.readouterr().out
        assert out == "upper = 37.1692\nlower = 23.5279\n"

    def test_sigma_flag(self, capsys):
        assert main(["bounds", "--n", "100", "--eps", "1", "--sigma", "2"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("upper = 74.3384")


class TestGen:
    def test_plain_dump_matches_library(self, in_tmp, capsys):
        assert main(["gen", "--n", "4", "--seed", "9"]) == 0
        out = capsys.readouterr().out
        rows = [[float(t) for t in line.split()] for line in out.strip().splitlines()]
        want = sample_laplacian(4, "gaussian", 9).to_dense()
        assert (rows == want).all()

    def test_block_and_sigma_flags(self, in_tmp):
        assert main(
            ["gen", "--n", "6", "--k", "2", "--sigma", "2", "--seed", "3",
             "--out", "m.txt"]
        ) == 0
        rows = [
            [float(t) for t in line.split()]
            for line in Path("m.txt").read_text().strip().splitlines()
        ]
        want = sample_block_laplacian(BlockSpec(2, 6), "gaussian", 3).to_dense() * 2.0
        assert (rows == want).all()

    def test_dump_roundtrips_exactly(self, in_tmp, capsys):
        assert main(["gen", "--n", "5", "--seed", "1"]) == 0
        out = capsys.readouterr().out
        rows = [[float(t) for t in line.split()] for line in out.strip().splitlines()]
        import numpy as np

        m = SymmetricMatrix.from_dense(np.array(rows))
        assert (m.to_dense() == sample_laplacian(5, "gaussian", 1).to_dense()).all()


class TestCampaigns:
    @pytest.mark.parametrize(
        "argv",
        [
            ["max-diag", "--n", "12", "--reps", "3"],
            ["max-eig", "--n", "12", "--reps", "3"],
            ["ratio", "--n", "12", "--reps", "3"],
            ["bounds", "--n", "12", "--reps", "3"],
            ["block", "--n", "12", "--reps", "3", "--k", "3"],
            ["esd", "--n", "12", "--reps", "3", "--bins", "10"],
        ],
    )
    def test_every_kind_writes_csv_and_manifest(self, in_tmp, argv):
        kind = argv[0]
        assert main(argv + ["--out", "r.csv", "--seed", "4"]) == 0
        lines = Path("r.csv").read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 4
        manifest = json.loads(Path("r.manifest.json").read_text())
        assert manifest["config"]["kind"] == kind
        assert manifest["records_file"] == "r.csv"

    def test_repeat_run_byte_identical(self, in_tmp):
        argv = ["max-diag", "--n", "50", "--reps", "3", "--seed", "7",
                "--out", "r.csv"]
        assert main(argv) == 0
        first = Path("r.csv").read_bytes()
        assert main(argv) == 0
        assert Path("r.csv").read_bytes() == first

    def test_thread_flag_does_not_change_bytes(self, in_tmp):
        base = ["max-eig", "--n", "20", "--reps", "8", "--seed", "5"]
        assert main(base + ["--threads", "1", "--out", "a.csv"]) == 0
        assert main(base + ["--threads", "8", "--out", "b.csv"]) == 0
        assert Path("a.csv").read_bytes() == Path("b.csv").read_bytes()

    def test_stdout_mode(self, in_tmp, capsys):
        assert main(["max-diag", "--n", "10", "--reps", "2", "--seed", "1"]) == 0
        captured = capsys.readouterr()
        assert captured.out.splitlines()[0] == CSV_HEADER
        assert "manifest written" in captured.err
        manifest = json.loads(Path("max-diag.manifest.json").read_text())
        assert manifest["records_file"] == ""

    def test_explicit_manifest_path(self, in_tmp):
        assert main(
            ["ratio", "--n", "10", "--reps", "2", "--seed", "1",
             "--out", "d.csv", "--manifest", "meta.json"]
        ) == 0
        assert Path("meta.json").exists()
        assert not Path("d.manifest.json").exists()

    def test_esd_scale_flag_recorded(self, in_tmp):
        assert main(
            ["esd", "--n", "10", "--reps", "2", "--seed", "1",
             "--scale", "sqrt-n-minus-1", "--out", "e.csv"]
        ) == 0
        manifest = json.loads(Path("e.manifest.json").read_text())
        assert manifest["config"]["scale"] == "sqrt-n-minus-1"


class TestReplay:
    def test_verifies_and_rewrites(self, in_tmp, capsys):
        main(["max-eig", "--n", "10", "--reps", "3", "--seed", "2",
              "--out", "r.csv"])
        capsys.readouterr()
        assert main(["replay", "--manifest", "r.manifest.json",
                     "--out", "again.csv"]) == 0
        assert "replay verified" in capsys.readouterr().err
        assert Path("again.csv").read_bytes() == Path("r.csv").read_bytes()

    def test_tampered_manifest_fails_with_runtime_code(self, in_tmp, capsys):
        main(["max-eig", "--n", "10", "--reps", "3", "--seed", "2",
              "--out", "r.csv"])
        manifest = json.loads(Path("r.manifest.json").read_text())
        manifest["config"]["seed"] = 3
        Path("r.manifest.json").write_text(json.dumps(manifest))
        assert main(["replay", "--manifest", "r.manifest.json"]) == 1
        assert "digest mismatch" in capsys.readouterr().err

    def test_missing_manifest_is_runtime_error(self, in_tmp, capsys):
        assert main(["replay", "--manifest", "no-such-file.json"]) == 1


class TestExitCodes:
    def test_usage_error_unknown_flag(self, capsys):
        assert main(["moments", "--m", "2"]) == 2

    def test_usage_error_unknown_command(self, capsys):
        assert main(["spectra"]) == 2

    def test_missing_required_flag(self, capsys):
        assert main(["max-diag", "--reps", "3"]) == 2

    def test_config_error(self, in_tmp, capsys):
        code = main(["block", "--n", "10", "--reps", "2", "--k", "4",
                     "--out", "x.csv"])
        assert code == 2
        assert "does not divide" in capsys.readouterr().err

    def test_bad_seed_rejected_by_parser(self, capsys):
        assert main(["gen", "--n", "4", "--seed", "-1"]) == 2

    def test_version(self, capsys):
        assert main(["--version"]) == 0
        assert capsys.readouterr().out.startswith("lapspec ")


class TestHelpGolden:
    def test_help_text_unchanged(self, monkeypatch):
        monkeypatch.setenv("COLUMNS", "80")
        parser = build_parser()
        parts = [parser.format_help()]
        subparsers = parser._subparsers._group_actions[0].choices
        for name, sub in subparsers.items():
            parts.append(f"\n===== {name} =====\n")
            parts.append(sub.format_help())
        assert "".join(parts) == (DATA / "cli_help.txt").read_text()

    def test_every_flag_documented(self):
        text = (DATA / "cli_help.txt").read_text()
        for flag in ("--n", "--reps", "--seed", "--dist", "--k", "--eps",
                     "--sigma", "--K", "--threads", "--out", "--manifest",
                     "--bins", "--scale"):
            assert flag in text


class TestModuleEntryPoint:
    def test_python_dash_m(self, tmp_path):
        proc = subprocess.run(
            [sys.executable, "-m", "lapspec", "moments", "--k", "1"],
            capture_output=True,
            text=True,
            cwd=tmp_path,
        )
        assert proc.returncode == 0
        assert proc.stdout == "m2 = 2\n"

    def test_console_script_diagnostics_on_stderr(self, tmp_path):
        proc = subprocess.run(
            [sys.executable, "-m", "lapspec", "max-diag", "--n", "10",
             "--reps", "2", "--seed", "1", "--out", str(tmp_path / "r.csv")],
            capture_output=True,
            text=True,
            cwd=tmp_path,
        )
        assert proc.returncode == 0
        assert proc.stdout == ""
        assert "manifest" in proc.stderr
