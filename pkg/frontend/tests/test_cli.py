"""Console entry point: exit codes and stream separation."""

import pytest

from lapspec_plots.cli import main


def args(fix, kind, stem, out):
    return [kind, "--in", str(fix(f"{stem}.csv")),
            "--manifest", str(fix(f"{stem}.manifest.json")), "--out", str(out)]


class TestExitCodes:
    def test_success_prints_gap_on_stdout(self, fix, tmp_path, capsys):
        code = main(args(fix, "ecdf-gumbel", "maxdiag", tmp_path / "f.svg"))
        assert code == 0
        captured = capsys.readouterr()
        assert captured.out.startswith("max gap = 0.0883911863")
        assert "wrote" in captured.err

    def test_non_gap_kinds_keep_stdout_empty(self, fix, tmp_path, capsys):
        code = main(args(fix, "ratio-trace", "ratio", tmp_path / "f.svg"))
        assert code == 0
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "wrote" in captured.err

    def test_contract_violation_is_usage_error(self, fix, tmp_path, capsys):
        code = main(args(fix, "esd-overlay", "maxdiag", tmp_path / "f.svg"))
        assert code == 2
        assert "plot: error:" in capsys.readouterr().err

    def test_missing_input_is_a_failure(self, fix, tmp_path, capsys):
        argv = ["ratio-trace", "--in", str(tmp_path / "nope.csv"),
                "--manifest", str(fix("ratio.manifest.json")),
                "--out", str(tmp_path / "f.svg")]
        code = main(argv)
        assert code == 1
        assert "plot: failure:" in capsys.readouterr().err

    def test_unknown_kind_rejected_by_parser(self, fix, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(args(fix, "sparkline", "ratio", tmp_path / "f.svg"))
        assert exc.value.code == 2

    def test_missing_required_flag(self):
        with pytest.raises(SystemExit) as exc:
            main(["ecdf-gumbel"])
        assert exc.value.code == 2
