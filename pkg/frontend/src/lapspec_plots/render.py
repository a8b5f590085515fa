"""The three figure kinds.

Every figure derives from one campaign (CSV + manifest pair) and embeds
the campaign's seed and config as a caption, so a printed figure can be
traced back to the exact run that produced it. SVG output is byte-stable
for fixed inputs: the embedded creation date is dropped and the internal
id salt is pinned.
"""

import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .contract import Campaign, ContractError, load_campaign  # noqa: E402
from .reference import (  # noqa: E402
    ecdf_max_gap,
    ecdf_points,
    gumbel_cdf,
    gumbel_k_cdf,
    mixture_pdf,
)

KINDS = ("esd-overlay", "ecdf-gumbel", "ratio-trace")

_RC = {
    "figure.figsize": (7.0, 4.5),
    "figure.dpi": 100,
    "font.family": "DejaVu Sans",
    "font.size": 10,
    # keep text as text so the embedded caption stays grep-able in the SVG
    "svg.fonttype": "none",
    "svg.hashsalt": "lapspec-plots",
    "path.simplify": False,
}


@dataclass(frozen=True)
class PlotJob:
    kind: str
    records: Path
    manifest: Path
    out: Path

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ContractError(
                f"unknown plot kind {self.kind!r}; expected one of {', '.join(KINDS)}"
            )
        suffix = Path(self.out).suffix.lower()
        if suffix not in (".svg", ".png"):
            raise ContractError(f"output must be .svg or .png, got {suffix!r}")


@dataclass(frozen=True)
class RenderResult:
    out: Path
    max_gap: float | None = None  # ecdf-gumbel: sup distance drawn in the figure
    curve: tuple | None = None  # esd-overlay: (x, y) of the density overlay


def _caption(campaign: Campaign):
    cfg = campaign.config
    parts = [f"{key}={cfg[key]}" for key in
             ("kind", "n", "reps", "seed", "dist", "k", "sigma", "eps")]
    return "campaign: " + " ".join(parts)


def _finish(fig, campaign, out):
    fig.text(0.01, 0.01, _caption(campaign), fontsize=7, color="0.35")
    out = Path(out)
    kwargs = {}
    if out.suffix.lower() == ".svg":
        kwargs["metadata"] = {"Date": None}
    fig.savefig(out, **kwargs)
    plt.close(fig)
    return out


def _render_esd_overlay(campaign, out):
    summary = campaign.summary
    hist = summary.get("histogram")
    fit = summary.get("mixture_fit")
    if hist is None:
        raise ContractError("manifest carries no pooled-spectrum histogram")
    if fit is None:
        raise ContractError("manifest carries no mixture fit to overlay")

    edges = np.asarray(hist["edges"], dtype=np.float64)
    masses = np.asarray(hist["masses"], dtype=np.float64)
    widths = np.diff(edges)
    density = masses / widths

    grid = np.linspace(edges[0], edges[-1], 512)
    overlay = mixture_pdf(grid, fit["alpha"], fit["radius"], fit["std"])

    fig, ax = plt.subplots()
    ax.bar(edges[:-1], density, width=widths, align="edge",
           color="#9ecae1", edgecolor="white", linewidth=0.3,
           label="pooled spectrum")
    ax.plot(grid, overlay, color="#08306b", linewidth=1.6,
            label=(f"mixture fit (alpha={fit['alpha']:.3f}, "
                   f"radius={fit['radius']:.3f}, std={fit['std']:.3f})"))
    ax.set_xlabel("eigenvalue (rescaled)")
    ax.set_ylabel("density")
    ax.set_title("bulk spectrum with fitted semicircle+Gaussian overlay")
    ax.legend(loc="upper right", fontsize=8)
    return RenderResult(out=_finish(fig, campaign, out),
                        curve=(grid, overlay))


def _ecdf_target(campaign):
    kind = campaign.config["kind"]
    if kind == "max-diag":
        return "m_n", gumbel_cdf, "Gumbel"
    if kind == "max-eig":
        return "r_n", gumbel_cdf, "Gumbel"
    if kind == "block":
        k = campaign.config["k"]
        return "r_n", lambda x: gumbel_k_cdf(x, k), f"{k}-fold Gumbel"
    raise ContractError(
        f"campaign kind {kind!r} records no extreme-value statistic"
    )


def _render_ecdf_gumbel(campaign, out):
    column, cdf, law_name = _ecdf_target(campaign)
    stats = campaign.column(column)
    gap = ecdf_max_gap(stats, cdf)
    xs, steps = ecdf_points(stats)

    pad = 0.05 * (xs[-1] - xs[0]) if xs.size > 1 else 1.0
    grid = np.linspace(xs[0] - pad, xs[-1] + pad, 512)

    fig, ax = plt.subplots()
    ax.step(xs, steps, where="post", color="#cb181d", linewidth=1.2,
            label=f"ECDF of {column} ({xs.size} replicates)")
    ax.plot(grid, cdf(grid), color="#08306b", linewidth=1.4,
            label=f"{law_name} CDF")
    ax.annotate(f"max gap = {gap:.9f}", xy=(0.02, 0.93),
                xycoords="axes fraction", fontsize=9)
    ax.set_xlabel(column)
    ax.set_ylabel("cumulative probability")
    ax.set_ylim(-0.02, 1.02)
    ax.set_title(f"rescaled maxima against the {law_name} law")
    ax.legend(loc="lower right", fontsize=8)
    return RenderResult(out=_finish(fig, campaign, out), max_gap=gap)


def _render_ratio_trace(campaign, out):
    kind = campaign.config["kind"]
    if kind not in ("ratio", "block"):
        raise ContractError(
            f"ratio-trace needs a ratio or block campaign, got kind {kind!r}"
        )
    n = campaign.config["n"]
    norm = math.sqrt(n * math.log(n))
    reps = [row["replicate"] for row in campaign.rows
            if row["lambda_max"] is not None]
    ratios = np.asarray(campaign.column("lambda_max")) / norm

    summary = campaign.summary
    median = summary["median_ratio"]
    quant = summary["quantiles_ratio"]

    fig, ax = plt.subplots()
    ax.plot(reps, ratios, color="#9ecae1", linewidth=0.8, marker=".",
            markersize=3, markerfacecolor="#2171b5", markeredgecolor="none",
            label="lambda_max / sqrt(n log n)")
    ax.axhspan(quant["q05"], quant["q95"], color="#deebf7", zorder=0,
               label="q05..q95 (manifest)")
    ax.axhline(median, color="#08306b", linewidth=1.4,
               label=f"median {median:.4f} (manifest)")
    ax.set_xlabel("replicate")
    ax.set_ylabel("ratio")
    ax.set_title("largest-eigenvalue ratio per replicate")
    ax.legend(loc="upper right", fontsize=8)
    return RenderResult(out=_finish(fig, campaign, out))


_RENDERERS = {
    "esd-overlay": _render_esd_overlay,
    "ecdf-gumbel": _render_ecdf_gumbel,
    "ratio-trace": _render_ratio_trace,
}


def render(job: PlotJob) -> RenderResult:
    """Render one figure; returns the output path plus kind-specific extras."""
    campaign = load_campaign(job.records, job.manifest)
    with matplotlib.rc_context(_RC):
        return _RENDERERS[job.kind](campaign, job.out)
