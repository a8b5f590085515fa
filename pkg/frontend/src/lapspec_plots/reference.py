"""Reference curves drawn on top of the data.

Deliberately re-derived here rather than imported from the simulation
package: the figures are meant to work from the files alone, and an
independent transcription of the target laws is itself a useful
cross-check (the max-gap readback in the ECDF figure must reproduce the
producer's KS value to 1e-9, which it cannot do if either side's CDF is
wrong).
"""

import numpy as np


def gumbel_cdf(x):
    return np.exp(-np.exp(-np.asarray(x, dtype=np.float64)))


def gumbel_k_cdf(x, k):
    if not (isinstance(k, int) and k >= 1):
        raise ValueError(f"block count must be a positive integer, got {k!r}")
    return np.exp(-k * np.exp(-np.asarray(x, dtype=np.float64)))


def semicircle_pdf(x, radius):
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius!r}")
    x = np.asarray(x, dtype=np.float64)
    inside = np.clip(radius * radius - x * x, 0.0, None)
    return np.where(np.abs(x) <= radius,
                    2.0 / (np.pi * radius * radius) * np.sqrt(inside), 0.0)


def gaussian_pdf(x, std):
    if std <= 0:
        raise ValueError(f"std must be positive, got {std!r}")
    x = np.asarray(x, dtype=np.float64)
    return np.exp(-0.5 * (x / std) ** 2) / (std * np.sqrt(2.0 * np.pi))


def mixture_pdf(x, alpha, radius, std):
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"mixture weight must lie in [0, 1], got {alpha!r}")
    # degenerate ends skip the dead component so its parameter may be anything
    if alpha == 0.0:
        return gaussian_pdf(x, std)
    if alpha == 1.0:
        return semicircle_pdf(x, radius)
    return alpha * semicircle_pdf(x, radius) + (1.0 - alpha) * gaussian_pdf(x, std)


def ecdf_max_gap(sample, cdf):
    """Exact sup-distance between the sample ECDF and a continuous CDF.

    Checks both sides of each jump: the ECDF is i/n just after the i-th
    order statistic and (i-1)/n just before it.
    """
    xs = np.sort(np.asarray(sample, dtype=np.float64))
    n = xs.size
    if n == 0:
        raise ValueError("need at least one sample point")
    theo = np.asarray(cdf(xs), dtype=np.float64)
    steps = np.arange(1, n + 1) / n
    return float(np.max(np.maximum(np.abs(steps - theo),
                                   np.abs(steps - 1.0 / n - theo))))


def ecdf_points(sample):
    """Sorted sample and the upper step heights i/n, for step plotting."""
    xs = np.sort(np.asarray(sample, dtype=np.float64))
    return xs, np.arange(1, xs.size + 1) / xs.size
