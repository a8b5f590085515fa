"""Figures from campaign artifacts (CSV + manifest), no simulation code.

Three kinds: `esd-overlay` (pooled-spectrum histogram with the fitted
mixture density), `ecdf-gumbel` (ECDF of the rescaled maximum against
its target law, with the exact max gap printed on the figure), and
`ratio-trace` (per-replicate eigenvalue ratio with the manifest's median
and quantile band). Consumes only the published file formats.
"""

from .contract import Campaign, ContractError, load_campaign, load_manifest, load_records
from .reference import (
    ecdf_max_gap,
    ecdf_points,
    gaussian_pdf,
    gumbel_cdf,
    gumbel_k_cdf,
    mixture_pdf,
    semicircle_pdf,
)
from .render import KINDS, PlotJob, RenderResult, render

__version__ = "0.1.0"

__all__ = [
    "Campaign",
    "ContractError",
    "KINDS",
    "PlotJob",
    "RenderResult",
    "ecdf_max_gap",
    "ecdf_points",
    "gaussian_pdf",
    "gumbel_cdf",
    "gumbel_k_cdf",
    "load_campaign",
    "load_manifest",
    "load_records",
    "mixture_pdf",
    "render",
    "semicircle_pdf",
    "__version__",
]
