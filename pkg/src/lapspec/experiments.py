"""Seeded, parallel Monte Carlo campaigns with bit-exact replay.

A campaign is a pure function of its configuration (minus the thread
count): replicate r derives its own RNG substream from the master seed,
replicates never share generator state, and aggregation is a
deterministic reduce in replicate order. Running the same configuration
with any worker count yields byte-identical records.

Records go to CSV with the fixed header

    replicate,lambda_max,max_diag,m_n,r_n,minmax_ok,upper_ok,comparison_ok,wall_ms

one line per replicate: reals as shortest round-trip decimals, booleans
as 0/1, values a kind does not compute left empty. The trailing wall_ms
column is always 0.0 - a deterministic placeholder kept for the column
contract, since real timings would break byte-level reproducibility.

The manifest is a JSON document with stable field order: schema tag,
schema version, artifact version, the draw-order contract identifier,
the full configuration echo, a per-kind summary, and an FNV-1a 64-bit
digest of the records file. ``replay`` re-runs the configuration and
verifies that digest.
"""

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._version import __version__
from .extremes import (
    SQRT2,
    bound_lower,
    bound_report,
    bound_upper,
    gumbel_cdf,
    gumbel_k_cdf,
    stat_max_diag_value,
    stat_max_eig_value,
)
from .laws import EmpiricalDistribution, fit_mixture, ks_statistic
from .linalg import EigensolverError, eigensolve, lambda_max
from .models import (
    BlockSpec,
    EntryDistribution,
    sample_laplacian,
    sample_laplacian_diagonal,
    scale_matrix,
    substream_seed,
)

__all__ = [
    "KINDS",
    "CSV_HEADER",
    "ExperimentConfig",
    "ReplicateRecord",
    "run",
    "replay",
    "records_to_csv",
    "manifest_to_json",
    "fnv1a64",
]

KINDS = ("esd", "max-diag", "max-eig", "block", "bounds", "ratio")
SCALES = ("sqrt-n", "sqrt-n-minus-1")

SCHEMA = "lapspec-experiment-manifest"
SCHEMA_VERSION = "1"
# Identifier of the sampling contract; replay refuses anything else.
DRAW_ORDER = "offdiag-row-major-i-lt-j/splitmix64-substreams/pcg64/v1"

CSV_HEADER = (
    "replicate,lambda_max,max_diag,m_n,r_n,minmax_ok,upper_ok,comparison_ok,wall_ms"
)

_QUANTILES = (0.05, 0.25, 0.5, 0.75, 0.95)
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class ExperimentConfig:
    """Campaign configuration; the manifest echoes every field."""

    kind: str
    n: int
    reps: int
    dist: str = "gaussian"
    k: int = 1
    eps: float = 1.0
    sigma: float = 1.0
    K: float = SQRT2
    c: float = 1.0
    seed: int = 0
    threads: int = None
    bins: int = 100
    scale: str = "sqrt-n"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if self.n < 3:
            raise ValueError(f"order must be >= 3 for campaigns, got {self.n}")
        if self.reps < 1:
            raise ValueError(f"reps must be >= 1, got {self.reps}")
        if self.dist not in EntryDistribution.KINDS:
            raise ValueError(f"unknown entry distribution {self.dist!r}")
        if self.kind == "block":
            BlockSpec(self.k, self.n)  # validates divisibility and size
        elif self.k != 1:
            raise ValueError("--k applies to block campaigns only")
        if self.eps <= 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.K <= 0:
            raise ValueError(f"K must be positive, got {self.K}")
        if self.c <= 0:
            raise ValueError(f"c must be positive, got {self.c}")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.threads is not None and self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")
        if self.bins < 10:
            raise ValueError(f"bins must be >= 10, got {self.bins}")
        if self.scale not in SCALES:
            raise ValueError(f"unknown scale {self.scale!r}")

    def scale_value(self):
        return math.sqrt(self.n if self.scale == "sqrt-n" else self.n - 1)


@dataclass(frozen=True)
class ReplicateRecord:
    """Statistics of one Monte Carlo draw.

    Fields a kind does not compute stay None (written as empty CSV
    cells). ``wall_ms`` is the deterministic 0.0 placeholder. ``failed``
    marks replicates whose eigensolve did not converge; they keep their
    row but are excluded from summaries.
    """

    replicate: int
    lambda_max: float = None
    max_diag: float = None
    m_n: float = None
    r_n: float = None
    minmax_ok: bool = None
    upper_ok: bool = None
    lower_ok: bool = None
    comparison_ok: bool = None
    hypothesis_ok: bool = None
    wall_ms: float = 0.0
    failed: bool = False


def _full_record(config, r, lam, max_diag):
    report = bound_report(
        lam,
        max_diag,
        config.n,
        eps=config.eps,
        K=config.K,
        c=config.c,
        sigma=config.sigma,
        k=config.k,
    )
    return ReplicateRecord(
        replicate=r,
        lambda_max=lam,
        max_diag=max_diag,
        m_n=stat_max_diag_value(config.n, max_diag),
        r_n=stat_max_eig_value(config.n, lam),
        minmax_ok=report.minmax_ok,
        upper_ok=report.upper_ok,
        lower_ok=report.lower_ok,
        comparison_ok=report.comparison_ok,
        hypothesis_ok=report.hypothesis_ok,
    )


def _rep_eig(config, r):
    """Worker for max-eig / block / bounds / ratio kinds.

    Block matrices are evaluated block by block: the spectrum of a
    block-diagonal matrix is the union of the block spectra, so
    lambda_max and max_diag are exact maxima over blocks of the same
    sampled sub-matrices the assembled matrix would contain. k = 1 is
    the plain single-matrix path (and block records with k = 1 are
    bitwise those of a max-eig run).
    """
    seed = substream_seed(config.seed, r)
    try:
        if config.kind == "block" and config.k > 1:
            size = config.n // config.k
            lam = -math.inf
            max_diag = -math.inf
            for b in range(config.k):
                block = scale_matrix(
                    sample_laplacian(size, config.dist, substream_seed(seed, b)),
                    config.sigma,
                )
                lam = max(lam, lambda_max(block))
                max_diag = max(max_diag, float(np.max(block.diagonal())))
        else:
            matrix = scale_matrix(
                sample_laplacian(config.n, config.dist, seed), config.sigma
            )
            lam = lambda_max(matrix)
            max_diag = float(np.max(matrix.diagonal()))
    except EigensolverError:
        return ReplicateRecord(replicate=r, failed=True)
    return _full_record(config, r, lam, max_diag)


def _rep_max_diag(config, r):
    """Worker for the diagonal-only fast path (no eigensolve)."""
    diag = sample_laplacian_diagonal(
        config.n, config.dist, substream_seed(config.seed, r)
    )
    max_diag = float(np.max(diag)) * config.sigma
    return ReplicateRecord(
        replicate=r,
        max_diag=max_diag,
        m_n=stat_max_diag_value(config.n, max_diag),
    )


def _rep_esd(config, r):
    """Worker for the esd kind: full spectrum plus the usual statistics."""
    seed = substream_seed(config.seed, r)
    matrix = scale_matrix(sample_laplacian(config.n, config.dist, seed), config.sigma)
    try:
        spectrum = eigensolve(matrix)
    except EigensolverError:
        return ReplicateRecord(replicate=r, failed=True), None
    lam = float(spectrum.eigenvalues[-1])
    max_diag = float(np.max(matrix.diagonal()))
    record = _full_record(config, r, lam, max_diag)
    return record, spectrum.eigenvalues / config.scale_value()


def _nearest_rank_quantiles(values):
    """Nearest-rank quantiles at the documented grid (no interpolation)."""
    ordered = np.sort(np.asarray(values, dtype=np.float64))
    count = ordered.size
    out = {}
    for q in _QUANTILES:
        rank = max(1, math.ceil(q * count))
        out[f"q{int(q * 100):02d}"] = float(ordered[rank - 1])
    return out


def _ratio(config, lam):
    return lam / math.sqrt(config.n * math.log(config.n))


def _coverage(records):
    total = len(records)
    frac = lambda picks: sum(1 for ok in picks if ok) / total  # noqa: E731
    return {
        "minmax": frac(r.minmax_ok for r in records),
        "upper": frac(r.upper_ok for r in records),
        "lower": frac(r.lower_ok for r in records),
        "comparison": frac(r.comparison_ok for r in records),
        "hypothesis": frac(r.hypothesis_ok for r in records),
    }


def _summarize(config, records, pooled):
    good = [r for r in records if not r.failed]
    summary = {"replicates": len(records), "failures": len(records) - len(good)}
    if not good:
        return summary
    kind = config.kind
    if kind == "max-diag":
        stats = [r.m_n for r in good]
        emp = EmpiricalDistribution.from_samples(stats)
        summary["ks_gumbel"] = ks_statistic(emp, gumbel_cdf)
        summary["mean_m_n"] = float(np.mean(stats))
        summary["quantiles_m_n"] = _nearest_rank_quantiles(stats)
    elif kind == "max-eig":
        stats = [r.r_n for r in good]
        emp = EmpiricalDistribution.from_samples(stats)
        summary["ks_gumbel"] = ks_statistic(emp, gumbel_cdf)
        summary["quantiles_r_n"] = _nearest_rank_quantiles(stats)
        summary["coverage"] = _coverage(good)
    elif kind == "block":
        stats = [r.r_n for r in good]
        emp = EmpiricalDistribution.from_samples(stats)
        summary["ks_gumbel_k"] = ks_statistic(emp, lambda x: gumbel_k_cdf(x, config.k))
        ratios = [_ratio(config, r.lambda_max) for r in good]
        quantiles = _nearest_rank_quantiles(ratios)
        summary["median_ratio"] = quantiles["q50"]
        summary["quantiles_ratio"] = quantiles
        summary["coverage"] = _coverage(good)
    elif kind == "ratio":
        ratios = [_ratio(config, r.lambda_max) for r in good]
        quantiles = _nearest_rank_quantiles(ratios)
        summary["median_ratio"] = quantiles["q50"]
        summary["quantiles_ratio"] = quantiles
        upper = bound_upper(config.n, config.eps, config.sigma)
        lower = bound_lower(config.n, config.eps, config.sigma)
        summary["frac_within_bounds"] = sum(
            1 for r in good if lower <= r.lambda_max <= upper
        ) / len(good)
        summary["coverage"] = _coverage(good)
    elif kind == "bounds":
        summary["coverage"] = _coverage(good)
    elif kind == "esd":
        values = np.concatenate(pooled)
        summary["pooled_count"] = int(values.size)
        summary["moments"] = {
            f"m{p}": float(np.mean(values**p)) for p in (1, 2, 3, 4)
        }
        reach = float(np.max(np.abs(values)))
        counts, edges = np.histogram(values, bins=config.bins, range=(-reach, reach))
        summary["histogram"] = {
            "edges": [float(e) for e in edges],
            "masses": [float(c) / values.size for c in counts],
        }
        if values.size >= 1000:
            fit = fit_mixture(EmpiricalDistribution.from_samples(values))
            summary["mixture_fit"] = {
                "alpha": fit.params.alpha,
                "radius": fit.params.radius,
                "std": fit.params.std,
                "residual": fit.residual,
                "converged": fit.converged,
            }
    return summary


def _config_echo(config):
    return {
        "kind": config.kind,
        "n": config.n,
        "reps": config.reps,
        "dist": config.dist,
        "k": config.k,
        "eps": config.eps,
        "sigma": config.sigma,
        "K": config.K,
        "c": config.c,
        "seed": config.seed,
        "threads": config.threads,
        "bins": config.bins,
        "scale": config.scale,
    }


def fnv1a64(data):
    """FNV-1a 64-bit digest of a byte string."""
    value = 0xCBF29CE484222325
    for byte in data:
        value = ((value ^ byte) * 0x100000001B3) & _MASK64
    return value


def _fmt_real(x):
    return "" if x is None else repr(float(x))


def _fmt_flag(x):
    return "" if x is None else str(int(x))


def records_to_csv(records):
    """Serialize records to the fixed-header CSV text."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            ",".join(
                (
                    str(r.replicate),
                    _fmt_real(r.lambda_max),
                    _fmt_real(r.max_diag),
                    _fmt_real(r.m_n),
                    _fmt_real(r.r_n),
                    _fmt_flag(r.minmax_ok),
                    _fmt_flag(r.upper_ok),
                    _fmt_flag(r.comparison_ok),
                    _fmt_real(r.wall_ms),
                )
            )
        )
    return "\n".join(lines) + "\n"


def manifest_to_json(manifest):
    """Stable-order JSON text for a manifest dict."""
    return json.dumps(manifest, indent=2) + "\n"


_WORKERS = {
    "esd": _rep_esd,
    "max-diag": _rep_max_diag,
    "max-eig": _rep_eig,
    "block": _rep_eig,
    "bounds": _rep_eig,
    "ratio": _rep_eig,
}


def run(config):
    """Execute a campaign.

    Returns (records, manifest): exactly ``config.reps`` records ordered
    by replicate index, and the manifest dict with the records digest
    already computed (``records_file`` is filled in by whoever writes
    the CSV to disk).
    """
    worker = _WORKERS[config.kind]
    threads = config.threads if config.threads is not None else os.cpu_count() or 1
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda r: worker(config, r), range(config.reps)))
    if config.kind == "esd":
        records = [rec for rec, _ in results]
        pooled = [eigs for _, eigs in results if eigs is not None]
    else:
        records = results
        pooled = []
    digest = fnv1a64(records_to_csv(records).encode("utf-8"))
    manifest = {
        "schema": SCHEMA,
        "version": SCHEMA_VERSION,
        "artifact_version": __version__,
        "draw_order": DRAW_ORDER,
        "config": _config_echo(config),
        "summary": _summarize(config, records, pooled),
        "records_file": "",
        "records_digest": f"{digest:016x}",
    }
    return records, manifest


def replay(manifest):
    """Re-derive a manifest's records and verify its digest.

    Raises ValueError when the schema tag, schema version, or draw-order
    contract identifier does not match this artifact, and RuntimeError
    when the recomputed records digest differs (e.g. a tampered seed).
    """
    if manifest.get("schema") != SCHEMA:
        raise ValueError(f"unrecognized manifest schema {manifest.get('schema')!r}")
    if manifest.get("version") != SCHEMA_VERSION:
        raise ValueError(
            f"manifest version {manifest.get('version')!r} does not match "
            f"supported version {SCHEMA_VERSION!r}"
        )
    if manifest.get("draw_order") != DRAW_ORDER:
        raise ValueError(
            f"draw-order contract {manifest.get('draw_order')!r} does not match "
            f"this artifact ({DRAW_ORDER!r})"
        )
    config = ExperimentConfig(**manifest["config"])
    records, fresh = run(config)
    if fresh["records_digest"] != manifest.get("records_digest"):
        raise RuntimeError(
            f"records digest mismatch: manifest says "
            f"{manifest.get('records_digest')}, replay computed "
            f"{fresh['records_digest']}"
        )
    return records
