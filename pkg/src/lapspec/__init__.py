"""Spectral and extreme-value statistics of Laplacian random matrices.

The package samples symmetric random matrices with independent
off-diagonal entries, forms their Laplacians L = D_X - X, and measures
how the largest diagonal entry and the largest eigenvalue fluctuate.
Both, suitably centred and scaled, follow extreme-value (Gumbel-type)
laws; the bulk spectrum, scaled by 1/sqrt(n), converges to the free
convolution of a semicircle law with a standard Gaussian.

Layers, bottom up:

- ``linalg``: packed symmetric storage, eigensolves, a Lanczos path for
  the largest eigenvalue.
- ``models``: entry distributions, seeded sampling of Wigner and
  Laplacian matrices, block-diagonal variants, the reproducibility
  contract (substream derivation and draw order).
- ``covariance``: the limiting covariance of the scaled diagonal and
  its whitening transforms.
- ``extremes``: centring/scaling constants, the two fluctuation
  statistics, Gumbel CDFs, non-asymptotic bounds.
- ``laws``: limiting-law moments, density fits, distances between
  samples and reference laws.
- ``experiments``: reproducible Monte Carlo campaigns with CSV/JSON
  artifacts.
- ``cli``: the ``lapspec`` command.
"""

from ._version import __version__
from .covariance import (
    DiagonalVector,
    apply_sigma,
    apply_sigma_half,
    apply_sigma_inv_half,
    reconstruct_from_whitened,
    sigma_eigenvalues,
    whiten,
)
from .experiments import (
    ExperimentConfig,
    ReplicateRecord,
    fnv1a64,
    manifest_to_json,
    records_to_csv,
    replay,
    run,
)
from .extremes import (
    BoundReport,
    GumbelConstants,
    bound_block,
    bound_lower,
    bound_report,
    bound_upper,
    check_comparison,
    gumbel_cdf,
    gumbel_constants,
    gumbel_k_cdf,
    gumbel_quantile,
    stat_max_diag,
    stat_max_diag_value,
    stat_max_eig,
    stat_max_eig_value,
)
from .laws import (
    EmpiricalDistribution,
    FitResult,
    MixtureParams,
    adaptive_simpson,
    esd_of,
    fit_mixture,
    gamma_m_moment,
    gaussian_pdf,
    histogram_l1,
    ks_statistic,
    mixture_pdf,
    semicircle_pdf,
)
from .linalg import (
    EigensolverError,
    Spectrum,
    SymmetricMatrix,
    eigensolve,
    lambda_max,
    packed_length,
    packed_offset,
    trace,
)
from .models import (
    BlockSpec,
    EntryDistribution,
    SeedSpec,
    dump_matrix,
    laplacian_of,
    sample_block_laplacian,
    sample_laplacian,
    sample_laplacian_diagonal,
    sample_wigner_offdiag,
    scale_matrix,
    substream_seed,
)

__all__ = [
    "__version__",
    "BlockSpec",
    "BoundReport",
    "DiagonalVector",
    "EigensolverError",
    "EmpiricalDistribution",
    "EntryDistribution",
    "ExperimentConfig",
    "FitResult",
    "GumbelConstants",
    "MixtureParams",
    "ReplicateRecord",
    "SeedSpec",
    "Spectrum",
    "SymmetricMatrix",
    "adaptive_simpson",
    "apply_sigma",
    "apply_sigma_half",
    "apply_sigma_inv_half",
    "bound_block",
    "bound_lower",
    "bound_report",
    "bound_upper",
    "check_comparison",
    "dump_matrix",
    "eigensolve",
    "esd_of",
    "fit_mixture",
    "fnv1a64",
    "gamma_m_moment",
    "gaussian_pdf",
    "gumbel_cdf",
    "gumbel_constants",
    "gumbel_k_cdf",
    "gumbel_quantile",
    "histogram_l1",
    "ks_statistic",
    "lambda_max",
    "laplacian_of",
    "manifest_to_json",
    "mixture_pdf",
    "packed_length",
    "packed_offset",
    "records_to_csv",
    "reconstruct_from_whitened",
    "replay",
    "run",
    "sample_block_laplacian",
    "sample_laplacian",
    "sample_laplacian_diagonal",
    "sample_wigner_offdiag",
    "scale_matrix",
    "semicircle_pdf",
    "sigma_eigenvalues",
    "stat_max_diag",
    "stat_max_diag_value",
    "stat_max_eig",
    "stat_max_eig_value",
    "substream_seed",
    "trace",
    "whiten",
]
