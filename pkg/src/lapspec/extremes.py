"""Extreme-value statistics, the Gumbel family, and eigenvalue bounds.

All logarithms are natural logs; the Gumbel centering constants only
carry their classical extreme-value meaning with natural logs, and every
formula here follows that convention.

Two rescaled statistics are provided. For an order-n Laplacian L:

* ``stat_max_diag``: M_n = a_n (max_i L_ii / sqrt(n-1) - sqrt((n-2)/(n-1)) b_n)
* ``stat_max_eig``:  R_n = a'_n (lambda_max(L) / sqrt(n-1) - b'_n sqrt((n-2)/(n-1)))

with a_n = sqrt(2 log n), b_n = a_n - (log log n + log 4 pi)/(2 a_n),
a'_n = a_n / sqrt(2), b'_n = sqrt(2) b_n. Both are strictly increasing
in their extreme statistic at fixed n.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .linalg import lambda_max as _lambda_max

__all__ = [
    "GumbelConstants",
    "BoundReport",
    "gumbel_constants",
    "stat_max_diag",
    "stat_max_diag_value",
    "stat_max_eig",
    "stat_max_eig_value",
    "gumbel_cdf",
    "gumbel_k_cdf",
    "gumbel_quantile",
    "bound_upper",
    "bound_lower",
    "bound_block",
    "bound_report",
    "check_comparison",
]

SQRT2 = math.sqrt(2.0)

# Slack for the deterministic min-max inequality max_i L_ii <= lambda_max:
# it holds exactly in real arithmetic, so only rounding needs absorbing.
_MINMAX_SLACK = 1e-9


@dataclass(frozen=True)
class GumbelConstants:
    """Centering and scaling constants at order n.

    a_n_prime = a_n / sqrt(2) and b_n_prime = sqrt(2) b_n exactly.
    """

    n: int
    a_n: float
    b_n: float
    a_n_prime: float
    b_n_prime: float


def _check_stat_order(n):
    if n < 3:
        raise ValueError(
            f"order must be >= 3 for extreme-value statistics (log log n), got {n}"
        )


def gumbel_constants(n):
    """Constants (a_n, b_n, a'_n, b'_n) for order n >= 3."""
    _check_stat_order(n)
    log_n = math.log(n)
    a = math.sqrt(2.0 * log_n)
    b = a - (math.log(log_n) + math.log(4.0 * math.pi)) / (2.0 * a)
    return GumbelConstants(n=n, a_n=a, b_n=b, a_n_prime=a / SQRT2, b_n_prime=SQRT2 * b)


def stat_max_diag_value(n, max_diag):
    """M_n from the scalar max_i L_ii at order n."""
    c = gumbel_constants(n)
    shrink = math.sqrt((n - 2.0) / (n - 1.0))
    return c.a_n * (max_diag / math.sqrt(n - 1.0) - shrink * c.b_n)


def stat_max_diag(laplacian):
    """M_n of a Laplacian matrix (Gumbel-distributed in the large-n limit
    for Gaussian entries)."""
    return stat_max_diag_value(laplacian.n, float(np.max(laplacian.diagonal())))


def stat_max_eig_value(n, lam):
    """R_n from the scalar lambda_max at order n."""
    c = gumbel_constants(n)
    shrink = math.sqrt((n - 2.0) / (n - 1.0))
    return c.a_n_prime * (lam / math.sqrt(n - 1.0) - c.b_n_prime * shrink)


def stat_max_eig(laplacian):
    """R_n of a Laplacian matrix, using the iterative lambda_max path."""
    _check_stat_order(laplacian.n)
    return stat_max_eig_value(laplacian.n, _lambda_max(laplacian))


def gumbel_cdf(x):
    """Standard Gumbel distribution function G(x) = exp(-e^(-x))."""
    return np.exp(-np.exp(-np.asarray(x, dtype=np.float64)))


def gumbel_k_cdf(x, k):
    """G_k(x) = exp(-k e^(-x)), the k-block variant; G_1 = G."""
    k = int(k)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return np.exp(-k * np.exp(-np.asarray(x, dtype=np.float64)))


def gumbel_quantile(p):
    """Inverse of ``gumbel_cdf`` on 0 < p < 1."""
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"quantile level must be in (0, 1), got {p}")
    return -math.log(-math.log(p))


def _check_bound_args(n, eps, sigma):
    if n < 2:
        raise ValueError(f"order must be >= 2 for bounds, got {n}")
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")


def bound_upper(n, eps, sigma=1.0):
    """High-probability upper bound sigma * sqrt((2 + eps) n log n)."""
    _check_bound_args(n, eps, sigma)
    return sigma * math.sqrt((2.0 + eps) * n * math.log(n))


def bound_lower(n, eps, sigma=1.0):
    """High-probability lower bound sigma (2 sqrt(2) - sqrt(2 + eps)) sqrt(n log n).

    Non-negative only for 0 < eps < 6; for eps >= 6 the (negative) value
    is still returned, with a UserWarning.
    """
    _check_bound_args(n, eps, sigma)
    value = sigma * (2.0 * SQRT2 - math.sqrt(2.0 + eps)) * math.sqrt(n * math.log(n))
    if eps >= 6.0:
        warnings.warn(
            f"lower bound is negative for eps = {eps} (needs 0 < eps < 6)",
            UserWarning,
            stacklevel=2,
        )
    return value


def bound_block(n, k, eps, sigma=1.0):
    """Bounds for a k-block Laplacian: (upper, lower) with

        upper = sigma sqrt((2/k + eps) n log n)
        lower = sigma (2 sqrt(2) - sqrt(2/k + eps)) sqrt(n log n)

    k = 1 reduces both to ``bound_upper``/``bound_lower``. The lower
    formula keeps the single-block constant 2 sqrt(2) for every k, as
    defined; note that for k >= 2 with 2/k + eps < 2 it exceeds the upper
    bound, so it is reported but cannot be a valid simultaneous bound
    there. A UserWarning flags a negative lower value, as in
    ``bound_lower``.
    """
    k = int(k)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    _check_bound_args(n, eps, sigma)
    u = 2.0 / k + eps
    root = math.sqrt(n * math.log(n))
    upper = sigma * math.sqrt(u) * root
    lower = sigma * (2.0 * SQRT2 - math.sqrt(u)) * root
    if lower < 0.0:
        warnings.warn(
            f"block lower bound is negative for k = {k}, eps = {eps}",
            UserWarning,
            stacklevel=2,
        )
    return upper, lower


@dataclass(frozen=True)
class BoundReport:
    """Outcome of the deterministic and high-probability inequalities for
    one matrix realization.

    ``minmax_ok`` (max_i L_ii <= lambda_max, up to 1e-9 slack) holds for
    every symmetric matrix; the others are the high-probability bounds at
    the given (eps, K, c, sigma).
    """

    lambda_max: float
    max_diag: float
    n: int
    epsilon: float
    K: float
    c: float
    sigma: float
    k: int
    minmax_ok: bool
    upper_ok: bool
    lower_ok: bool
    comparison_ok: bool
    hypothesis_ok: bool


def bound_report(lam, max_diag, n, *, eps=1.0, K=SQRT2, c=1.0, sigma=1.0, k=1):
    """Evaluate every inequality on precomputed scalars.

    ``k`` selects the block-aware upper/lower formulas (k = 1 is the
    plain case). The comparison inequality is
    lambda_max <= K (1 + 1/sqrt(n-1)) max_i L_ii and the hypothesis
    indicator is sigma sqrt((n-1) log n) <= c max_i L_ii.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        upper, lower = bound_block(n, k, eps, sigma)
    slack = _MINMAX_SLACK * max(1.0, abs(lam))
    return BoundReport(
        lambda_max=lam,
        max_diag=max_diag,
        n=n,
        epsilon=eps,
        K=K,
        c=c,
        sigma=sigma,
        k=k,
        minmax_ok=bool(max_diag <= lam + slack),
        upper_ok=bool(lam <= upper),
        lower_ok=bool(lam >= lower),
        comparison_ok=bool(lam <= K * (1.0 + 1.0 / math.sqrt(n - 1.0)) * max_diag),
        hypothesis_ok=bool(
            sigma * math.sqrt((n - 1.0) * math.log(n)) <= c * max_diag
        ),
    )


def check_comparison(laplacian, K=SQRT2, *, eps=1.0, c=1.0, sigma=1.0, k=1):
    """BoundReport for a matrix: lambda_max via the fast path, max diag
    read off the stored diagonal."""
    if K <= 0:
        raise ValueError(f"K must be positive, got {K}")
    lam = _lambda_max(laplacian)
    max_diag = float(np.max(laplacian.diagonal()))
    return bound_report(
        lam, max_diag, laplacian.n, eps=eps, K=K, c=c, sigma=sigma, k=k
    )
