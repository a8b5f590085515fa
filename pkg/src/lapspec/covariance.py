"""Covariance structure of the rescaled Laplacian diagonal.

The vector D = (L_11, ..., L_nn)/sqrt(n-1) has covariance Sigma with unit
diagonal and 1/(n-1) off the diagonal. Its eigenvalues are (n-2)/(n-1)
(multiplicity n-1, eigenspace orthogonal to the all-ones vector) and 2
(multiplicity 1, eigenvector 1/sqrt(n)). Everything below is matrix-free:
Sigma acts as a rank-one update of a scaled identity, so each operation
is O(n) and Sigma itself is materialized only in small-order tests.

All operations require n >= 3: at n = 2 the repeated eigenvalue vanishes
and the inverse square root is singular.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DiagonalVector",
    "sigma_eigenvalues",
    "apply_sigma",
    "apply_sigma_half",
    "apply_sigma_inv_half",
    "reconstruct_from_whitened",
    "whiten",
]

_SQRT2 = math.sqrt(2.0)


def _check_order(n):
    if n < 3:
        raise ValueError(f"order must be >= 3 for diagonal covariance work, got {n}")


def _check_vector(v, n):
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (n,):
        raise ValueError(f"vector of length {n} required, got shape {v.shape}")
    return v


@dataclass(frozen=True)
class DiagonalVector:
    """Rescaled Laplacian diagonal (L_11, ..., L_nn)/sqrt(n-1)."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        _check_order(self.n)
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.shape != (self.n,):
            raise ValueError("length mismatch")
        if not np.all(np.isfinite(values)):
            raise ValueError("non-finite diagonal values")
        values = values.copy()
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @classmethod
    def from_laplacian(cls, laplacian):
        """Rescale the diagonal of a Laplacian matrix by 1/sqrt(n-1)."""
        n = laplacian.n
        _check_order(n)
        return cls(n, laplacian.diagonal() / math.sqrt(n - 1.0))

    @classmethod
    def from_raw_diagonal(cls, diag):
        """Rescale raw diagonal entries (the fast-path representation)."""
        diag = np.asarray(diag, dtype=np.float64)
        n = diag.shape[0]
        _check_order(n)
        return cls(n, diag / math.sqrt(n - 1.0))


def sigma_eigenvalues(n):
    """Eigenvalues of Sigma: ((n-2)/(n-1), 2), repeated then top."""
    _check_order(n)
    return ((n - 2.0) / (n - 1.0), 2.0)


def apply_sigma(v, n):
    """Sigma @ v straight from the definition: unit diagonal, 1/(n-1) off."""
    _check_order(n)
    v = _check_vector(v, n)
    return v * (1.0 - 1.0 / (n - 1.0)) + np.sum(v) / (n - 1.0)


def apply_sigma_half(v, n):
    """Sigma^(1/2) @ v via the rank-one closed form.

    Sigma^(1/2) = s I + (sqrt(2) - s) J/n with s = sqrt((n-2)/(n-1)) and
    J the all-ones matrix: scale the component orthogonal to the ones
    vector by s and the ones component by sqrt(2).
    """
    _check_order(n)
    v = _check_vector(v, n)
    s = math.sqrt((n - 2.0) / (n - 1.0))
    return s * v + (_SQRT2 - s) * np.mean(v)


def apply_sigma_inv_half(v, n):
    """Sigma^(-1/2) @ v; inverse of ``apply_sigma_half`` to 1e-12 relative.

    Closed form sqrt((n-1)/(n-2)) I + (1/sqrt(2) - sqrt((n-1)/(n-2))) J/n.
    """
    _check_order(n)
    v = _check_vector(v, n)
    t = math.sqrt((n - 1.0) / (n - 2.0))
    return t * v + (1.0 / _SQRT2 - t) * np.mean(v)


def whiten(d):
    """Whitened counterpart of a DiagonalVector (identity covariance for
    Gaussian entries)."""
    return DiagonalVector(d.n, apply_sigma_inv_half(d.values, d.n))


def reconstruct_from_whitened(d_tilde, n):
    """Map a whitened vector back to the diagonal scale.

    Explicit representation D_i = (sqrt(2) - s) Z / sqrt(n) + s d_tilde_i
    with Z = sum_j d_tilde_j / sqrt(n) and s = sqrt((n-2)/(n-1)). Same
    linear map as ``apply_sigma_half`` through a different float route;
    the two agree to 1e-12 relative (tested).
    """
    _check_order(n)
    d_tilde = _check_vector(d_tilde, n)
    root_n = math.sqrt(n)
    z = float(np.sum(d_tilde)) / root_n
    s = math.sqrt((n - 2.0) / (n - 1.0))
    return (_SQRT2 - s) * z / root_n + s * d_tilde
