"""Reference densities, combinatorial moments, and goodness-of-fit tools.

The limiting spectral law of the rescaled Laplacian has no closed-form
density; it is characterized by its even moments

    m_{2k} = sum over pair partitions w of {1..2k} of 2^h(w),

where h(w) counts the blocks that cross no other block (a block {a < b}
crosses {c < d} iff a < c < b < d or c < a < d < b; a non-crossing block
is a singleton component of the crossing graph). The first values are
m_2 = 2, m_4 = 9, m_6 = 56.

A practical stand-in for the density is the normalized two-component
mixture alpha * semicircle(radius) + (1 - alpha) * N(0, std^2); the
conventional parameter choice is alpha = sqrt(2)/2, radius = std =
sqrt(2) * sigma. The written prefactors this mixture is drawn from
integrate to 1/2 in their source form; this module always uses the
normalized version (integrates to 1), and ``fit_mixture`` exists so the
approximation can be examined against data instead of trusted.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

__all__ = [
    "EmpiricalDistribution",
    "MixtureParams",
    "FitResult",
    "semicircle_pdf",
    "gaussian_pdf",
    "mixture_pdf",
    "fit_mixture",
    "gamma_m_moment",
    "esd_of",
    "ks_statistic",
    "histogram_l1",
    "adaptive_simpson",
]

_SQRT2 = math.sqrt(2.0)
_MAX_MOMENT_K = 6


@dataclass(frozen=True)
class EmpiricalDistribution:
    """Sorted sample defining an empirical distribution function."""

    samples: np.ndarray

    def __post_init__(self):
        samples = np.ascontiguousarray(self.samples, dtype=np.float64)
        if samples.ndim != 1 or samples.size < 1:
            raise ValueError("nonempty 1-d sample required")
        if not np.all(np.isfinite(samples)):
            raise ValueError("non-finite sample values")
        if np.any(np.diff(samples) < 0):
            raise ValueError("samples must be sorted ascending")
        samples = samples.copy()
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)

    @classmethod
    def from_samples(cls, values):
        """Sort a raw sample into an EmpiricalDistribution."""
        return cls(np.sort(np.asarray(values, dtype=np.float64)))

    @property
    def n(self):
        return self.samples.size

    def moment(self, order):
        """Sample moment of the given order."""
        return float(np.mean(self.samples**order))


def semicircle_pdf(x, radius):
    """Semicircle density on [-radius, radius].

    (2 / (pi radius^2)) sqrt(radius^2 - x^2) inside the support, 0
    outside; integrates to 1.
    """
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    x = np.asarray(x, dtype=np.float64)
    inside = np.abs(x) <= radius
    out = np.zeros_like(x)
    out[inside] = (2.0 / (math.pi * radius * radius)) * np.sqrt(
        radius * radius - x[inside] ** 2
    )
    if out.ndim == 0:
        return float(out)
    return out


def gaussian_pdf(x, std):
    """Centered normal density with standard deviation ``std``."""
    if std <= 0:
        raise ValueError(f"std must be positive, got {std}")
    x = np.asarray(x, dtype=np.float64)
    out = np.exp(-0.5 * (x / std) ** 2) / (std * math.sqrt(2.0 * math.pi))
    if out.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class MixtureParams:
    """Weight and scales of the semicircle + Gaussian mixture."""

    alpha: float
    radius: float
    std: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.radius <= 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if self.std <= 0:
            raise ValueError(f"std must be positive, got {self.std}")

    @classmethod
    def default(cls, sigma=1.0):
        """Conventional choice alpha = sqrt(2)/2, radius = std = sqrt(2) sigma."""
        if sigma <= 0:
            raise ValueError(f"sigma must be positive, got {sigma}")
        return cls(alpha=_SQRT2 / 2.0, radius=_SQRT2 * sigma, std=_SQRT2 * sigma)


def mixture_pdf(x, params):
    """Normalized mixture density alpha * semicircle + (1 - alpha) * Gaussian."""
    return params.alpha * semicircle_pdf(x, params.radius) + (
        1.0 - params.alpha
    ) * gaussian_pdf(x, params.std)


@dataclass(frozen=True)
class FitResult:
    """Mixture fit outcome: parameters, L2 residual over bins, and
    whether the optimizer reported convergence (on non-convergence the
    best iterate is returned here rather than raised)."""

    params: MixtureParams
    residual: float
    converged: bool


def fit_mixture(esd):
    """Least-squares fit of mixture parameters to a 100-bin density
    histogram of the sample.

    Requires at least 1000 samples. alpha is constrained to [0, 1] and
    the scales to positive values by optimizer bounds.
    """
    if esd.n < 1000:
        raise ValueError(f"mixture fit needs >= 1000 samples, got {esd.n}")
    counts, edges = np.histogram(esd.samples, bins=100)
    widths = np.diff(edges)
    density = counts / (esd.n * widths)
    centers = 0.5 * (edges[:-1] + edges[1:])

    def residuals(theta):
        params = MixtureParams(
            alpha=min(max(theta[0], 0.0), 1.0),
            radius=max(theta[1], 1e-8),
            std=max(theta[2], 1e-8),
        )
        return mixture_pdf(centers, params) - density

    std0 = max(float(np.std(esd.samples)), 1e-3)
    result = least_squares(
        residuals,
        x0=np.array([0.5, 2.0 * std0, std0]),
        bounds=([0.0, 1e-8, 1e-8], [1.0, np.inf, np.inf]),
    )
    params = MixtureParams(
        alpha=float(min(max(result.x[0], 0.0), 1.0)),
        radius=float(max(result.x[1], 1e-8)),
        std=float(max(result.x[2], 1e-8)),
    )
    return FitResult(
        params=params,
        residual=float(np.linalg.norm(result.fun)),
        converged=bool(result.success),
    )


def _pairings(elems):
    """All pair partitions, pairing the smallest element first."""
    if not elems:
        yield ()
        return
    first, rest = elems[0], elems[1:]
    for i, partner in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for tail in _pairings(remaining):
            yield ((first, partner),) + tail


def _blocks_cross(p, q):
    a, b = p
    c, d = q
    return a < c < b < d or c < a < d < b


def _lonely_block_count(pairing):
    """Connected components of the crossing graph that are one block."""
    p = len(pairing)
    adjacency = [[] for _ in range(p)]
    for i in range(p):
        for j in range(i + 1, p):
            if _blocks_cross(pairing[i], pairing[j]):
                adjacency[i].append(j)
                adjacency[j].append(i)
    seen = [False] * p
    lonely = 0
    for start in range(p):
        if seen[start]:
            continue
        seen[start] = True
        stack = [start]
        size = 0
        while stack:
            node = stack.pop()
            size += 1
            for neighbor in adjacency[node]:
                if not seen[neighbor]:
                    seen[neighbor] = True
                    stack.append(neighbor)
        if size == 1:
            lonely += 1
    return lonely


def gamma_m_moment(k):
    """Even moment m_{2k} of the limiting spectral law, exactly.

    Enumerates the (2k-1)!! pair partitions of {1..2k} in integer
    arithmetic; k is capped at 6 (10395 partitions) since the count
    grows as a double factorial. k = 0 returns 1 (empty product).
    """
    k = int(k)
    if not 0 <= k <= _MAX_MOMENT_K:
        raise ValueError(f"k must be in [0, {_MAX_MOMENT_K}], got {k}")
    if k == 0:
        return 1.0
    total = 0
    for pairing in _pairings(tuple(range(1, 2 * k + 1))):
        total += 2 ** _lonely_block_count(pairing)
    return float(total)


def esd_of(spectrum, scale):
    """Empirical spectral distribution of eigenvalues / scale."""
    if scale <= 0:
        raise ValueError(f"scale must be positive, got {scale}")
    return EmpiricalDistribution.from_samples(spectrum.eigenvalues / scale)


def ks_statistic(emp, cdf):
    """Exact Kolmogorov-Smirnov sup-distance to a reference CDF.

    D = max_i max(|i/n - F(x_(i))|, |(i-1)/n - F(x_(i))|) over the sorted
    sample; always in [0, 1].
    """
    n = emp.n
    f = np.asarray(cdf(emp.samples), dtype=np.float64)
    if f.shape != emp.samples.shape:
        raise ValueError("reference cdf must evaluate elementwise")
    i = np.arange(1, n + 1)
    return float(np.max(np.maximum(np.abs(i / n - f), np.abs((i - 1) / n - f))))


def adaptive_simpson(f, a, b, tol=1e-12):
    """Adaptive Simpson quadrature of a scalar function on [a, b]."""
    if not b > a:
        raise ValueError(f"invalid interval [{a}, {b}]")

    def simpson(fa, fm, fb, lo, hi):
        return (hi - lo) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(lo, hi, flo, fmid, fhi, whole, tol, depth):
        mid = 0.5 * (lo + hi)
        lmid = 0.5 * (lo + mid)
        rmid = 0.5 * (mid + hi)
        flm = f(lmid)
        frm = f(rmid)
        left = simpson(flo, flm, fmid, lo, mid)
        right = simpson(fmid, frm, fhi, mid, hi)
        delta = left + right - whole
        if depth <= 0 or abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        return recurse(lo, mid, flo, flm, fmid, left, 0.5 * tol, depth - 1) + recurse(
            mid, hi, fmid, frm, fhi, right, 0.5 * tol, depth - 1
        )

    mid = 0.5 * (a + b)
    fa, fm, fb = f(a), f(mid), f(b)
    return recurse(a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 50)


def histogram_l1(emp, pdf, bins, bin_range):
    """L1 distance between empirical bin masses and reference bin masses.

    sum_b |h_b - integral of pdf over bin b| with h_b the fraction of the
    whole sample falling in bin b; lies in [0, 2]. Reference masses come
    from adaptive Simpson quadrature at 1e-12 target.
    """
    bins = int(bins)
    if bins < 10:
        raise ValueError(f"at least 10 bins required, got {bins}")
    lo, hi = float(bin_range[0]), float(bin_range[1])
    if not hi > lo:
        raise ValueError(f"invalid range ({lo}, {hi})")
    counts, edges = np.histogram(emp.samples, bins=bins, range=(lo, hi))
    masses = counts / emp.n
    total = 0.0
    for b in range(bins):
        reference = adaptive_simpson(pdf, edges[b], edges[b + 1])
        total += abs(masses[b] - reference)
    return float(total)
