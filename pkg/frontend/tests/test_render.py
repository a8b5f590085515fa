"""Rendering smoke tests plus the cross-component consistency check:
the max gap drawn on the ECDF figure must reproduce the producer's KS
value exactly (1e-9), since both sides claim to compute the same exact
sup-distance over the same sample.
"""

import json

import numpy as np
import pytest

from lapspec_plots.contract import ContractError
from lapspec_plots.reference import gaussian_pdf
from lapspec_plots.render import PlotJob, render

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def job(fix, kind, stem, out):
    return PlotJob(kind=kind, records=fix(f"{stem}.csv"),
                   manifest=fix(f"{stem}.manifest.json"), out=out)


def manifest_of(fix, stem):
    return json.loads(fix(f"{stem}.manifest.json").read_text())


class TestSmoke:
    @pytest.mark.parametrize("kind,stem", [
        ("esd-overlay", "esd"),
        ("ecdf-gumbel", "maxdiag"),
        ("ecdf-gumbel", "block_k2"),
        ("ratio-trace", "ratio"),
    ])
    def test_renders_svg(self, fix, tmp_path, kind, stem):
        out = tmp_path / f"{stem}.svg"
        result = render(job(fix, kind, stem, out))
        assert result.out == out
        data = out.read_bytes()
        assert data.startswith(b"<?xml")
        assert len(data) > 1000

    def test_renders_png(self, fix, tmp_path):
        out = tmp_path / "fig.png"
        render(job(fix, "ratio-trace", "ratio", out))
        assert out.read_bytes().startswith(PNG_MAGIC)

    def test_three_record_fixture_renders(self, fix, tmp_path):
        out = tmp_path / "tiny.svg"
        render(job(fix, "ecdf-gumbel", "tiny3", out))
        assert out.read_bytes().startswith(b"<?xml")


class TestMaxGapMatchesProducer:
    def test_max_diag_statistic(self, fix, tmp_path):
        result = render(job(fix, "ecdf-gumbel", "maxdiag", tmp_path / "a.svg"))
        want = manifest_of(fix, "maxdiag")["summary"]["ks_gumbel"]
        assert abs(result.max_gap - want) <= 1e-9, (result.max_gap, want)

    def test_block_statistic_against_k_fold_law(self, fix, tmp_path):
        result = render(job(fix, "ecdf-gumbel", "block_k2", tmp_path / "b.svg"))
        want = manifest_of(fix, "block_k2")["summary"]["ks_gumbel_k"]
        assert abs(result.max_gap - want) <= 1e-9, (result.max_gap, want)

    def test_eigenvalue_statistic(self, fix, tmp_path):
        result = render(job(fix, "ecdf-gumbel", "tiny3", tmp_path / "c.svg"))
        want = manifest_of(fix, "tiny3")["summary"]["ks_gumbel"]
        assert abs(result.max_gap - want) <= 1e-9, (result.max_gap, want)

    def test_gap_is_drawn_on_the_figure(self, fix, tmp_path):
        out = tmp_path / "d.svg"
        result = render(job(fix, "ecdf-gumbel", "maxdiag", out))
        assert f"max gap = {result.max_gap:.9f}" in out.read_text()


class TestOverlay:
    def test_degenerate_mixture_is_the_gaussian_bell(self, fix, tmp_path):
        result = render(job(fix, "esd-overlay", "esd_alpha0", tmp_path / "g.svg"))
        xs, ys = result.curve
        assert np.array_equal(ys, gaussian_pdf(xs, 1.5))

    def test_overlay_uses_fitted_params(self, fix, tmp_path):
        result = render(job(fix, "esd-overlay", "esd", tmp_path / "h.svg"))
        fit = manifest_of(fix, "esd")["summary"]["mixture_fit"]
        xs, ys = result.curve
        # recompute the density by hand at the grid point nearest the origin
        i = int(np.argmin(np.abs(xs)))
        x, r, s = xs[i], fit["radius"], fit["std"]
        semi = 2.0 / (np.pi * r * r) * np.sqrt(r * r - x * x)
        gauss = np.exp(-0.5 * (x / s) ** 2) / (s * np.sqrt(2 * np.pi))
        want = fit["alpha"] * semi + (1 - fit["alpha"]) * gauss
        assert ys[i] == pytest.approx(want, rel=1e-12)


class TestDeterminismAndTraceability:
    def test_svg_rerender_is_byte_stable(self, fix, tmp_path):
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        render(job(fix, "ecdf-gumbel", "maxdiag", a))
        render(job(fix, "ecdf-gumbel", "maxdiag", b))
        assert a.read_bytes() == b.read_bytes()

    def test_inputs_are_not_mutated(self, fix, tmp_path):
        before_csv = fix("ratio.csv").read_bytes()
        before_man = fix("ratio.manifest.json").read_bytes()
        render(job(fix, "ratio-trace", "ratio", tmp_path / "r.svg"))
        assert fix("ratio.csv").read_bytes() == before_csv
        assert fix("ratio.manifest.json").read_bytes() == before_man

    @pytest.mark.parametrize("kind,stem", [
        ("esd-overlay", "esd"),
        ("ecdf-gumbel", "maxdiag"),
        ("ratio-trace", "ratio"),
    ])
    def test_caption_embeds_seed_and_config(self, fix, tmp_path, kind, stem):
        out = tmp_path / "cap.svg"
        render(job(fix, kind, stem, out))
        text = out.read_text()
        cfg = manifest_of(fix, stem)["config"]
        assert f"seed={cfg['seed']}" in text
        assert f"n={cfg['n']}" in text
        assert f"kind={cfg['kind']}" in text


class TestJobValidation:
    def test_unknown_kind(self, fix):
        with pytest.raises(ContractError, match="kind"):
            PlotJob(kind="pie-chart", records=fix("ratio.csv"),
                    manifest=fix("ratio.manifest.json"), out="x.svg")

    def test_unknown_output_format(self, fix):
        with pytest.raises(ContractError, match="svg or .png"):
            PlotJob(kind="ratio-trace", records=fix("ratio.csv"),
                    manifest=fix("ratio.manifest.json"), out="x.pdf")

    def test_overlay_needs_a_spectrum_campaign(self, fix, tmp_path):
        with pytest.raises(ContractError, match="histogram"):
            render(job(fix, "esd-overlay", "maxdiag", tmp_path / "x.svg"))

    def test_ecdf_needs_a_statistic_campaign(self, fix, tmp_path):
        with pytest.raises(ContractError, match="statistic"):
            render(job(fix, "ecdf-gumbel", "ratio", tmp_path / "x.svg"))

    def test_trace_needs_a_ratio_campaign(self, fix, tmp_path):
        with pytest.raises(ContractError, match="ratio or block"):
            render(job(fix, "ratio-trace", "maxdiag", tmp_path / "x.svg"))
