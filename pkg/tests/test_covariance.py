"""Covariance of the rescaled diagonal: closed forms, whitening, round trips."""

import math

import numpy as np
import pytest

from lapspec.covariance import (
    DiagonalVector,
    apply_sigma,
    apply_sigma_half,
    apply_sigma_inv_half,
    reconstruct_from_whitened,
    sigma_eigenvalues,
    whiten,
)
from lapspec.laws import EmpiricalDistribution, ks_statistic
from lapspec.models import sample_laplacian, sample_laplacian_diagonal, substream_seed

# frozen half-power entries at n = 3 (high-precision evaluation of the
# closed form s I + (sqrt(2) - s) J/n, s = sqrt((n-2)/(n-1)))
HALF_DIAG_N3 = 0.94280904158206337
HALF_OFF_N3 = 0.23570226039551584


def sigma_dense(n):
    # materialized only at unit-test scale
    return np.eye(n) * (1.0 - 1.0 / (n - 1.0)) + np.full((n, n), 1.0 / (n - 1.0))


def half_dense(n):
    out = np.empty((n, n))
    s = math.sqrt((n - 2.0) / (n - 1.0))
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        out[:, j] = apply_sigma_half(e, n)
    return out


class TestDiagonalVector:
    def test_from_laplacian_scaling(self):
        lap = sample_laplacian(6, "gaussian", 0)
        d = DiagonalVector.from_laplacian(lap)
        np.testing.assert_array_equal(d.values, lap.diagonal() / math.sqrt(5.0))

    def test_from_raw_diagonal(self):
        d = DiagonalVector.from_raw_diagonal([3.0, 4.0, 5.0])
        np.testing.assert_allclose(d.values, np.array([3, 4, 5]) / math.sqrt(2.0))

    def test_rejects_small_order(self):
        with pytest.raises(ValueError):
            DiagonalVector(2, np.zeros(2))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            DiagonalVector(3, np.array([0.0, np.inf, 0.0]))

    def test_values_read_only(self):
        d = DiagonalVector(3, np.zeros(3))
        with pytest.raises(ValueError):
            d.values[0] = 1.0


class TestClosedForms:
    def test_eigenvalues(self):
        rep, top = sigma_eigenvalues(100)
        assert rep == 98.0 / 99.0
        assert top == 2.0

    def test_eigenvalues_match_dense(self):
        for n in (3, 5, 10):
            vals = np.linalg.eigvalsh(sigma_dense(n))
            rep, top = sigma_eigenvalues(n)
            np.testing.assert_allclose(vals[:-1], np.full(n - 1, rep), atol=1e-12)
            assert abs(vals[-1] - top) <= 1e-12

    def test_apply_sigma_matches_dense(self):
        rng = np.random.default_rng(5)
        for n in (3, 7, 10):
            v = rng.standard_normal(n)
            np.testing.assert_allclose(
                apply_sigma(v, n), sigma_dense(n) @ v, atol=1e-13
            )

    def test_half_entries_frozen_n3(self):
        h = half_dense(3)
        np.testing.assert_allclose(np.diag(h), np.full(3, HALF_DIAG_N3), rtol=1e-15)
        off = h[~np.eye(3, dtype=bool)]
        np.testing.assert_allclose(off, np.full(6, HALF_OFF_N3), rtol=1e-15)

    @pytest.mark.parametrize("n", [3, 10, 1000])
    def test_half_squared_is_sigma(self, n):
        rng = np.random.default_rng(n)
        for _ in range(20):
            v = rng.standard_normal(n)
            lhs = apply_sigma_half(apply_sigma_half(v, n), n)
            rhs = apply_sigma(v, n)
            scale = max(1.0, np.abs(rhs).max())
            assert np.abs(lhs - rhs).max() <= 1e-12 * scale

    @pytest.mark.parametrize("n", [3, 10, 1000])
    def test_inv_half_inverts_half(self, n):
        rng = np.random.default_rng(n + 1)
        for _ in range(20):
            v = rng.standard_normal(n)
            back = apply_sigma_inv_half(apply_sigma_half(v, n), n)
            scale = max(1.0, np.abs(v).max())
            assert np.abs(back - v).max() <= 1e-12 * scale

    def test_ones_vector_is_top_eigenvector(self):
        n = 12
        ones = np.ones(n)
        np.testing.assert_allclose(apply_sigma(ones, n), 2.0 * ones, atol=1e-13)
        np.testing.assert_allclose(
            apply_sigma_half(ones, n), math.sqrt(2.0) * ones, atol=1e-13
        )

    def test_orthogonal_complement_eigenvector(self):
        n = 12
        v = np.zeros(n)
        v[0], v[1] = 1.0, -1.0
        rep, _ = sigma_eigenvalues(n)
        np.testing.assert_allclose(apply_sigma(v, n), rep * v, atol=1e-13)

    def test_rejects_small_order(self):
        for fn in (apply_sigma, apply_sigma_half, apply_sigma_inv_half):
            with pytest.raises(ValueError):
                fn(np.zeros(2), 2)

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            apply_sigma(np.zeros(4), 5)


class TestReconstruction:
    @pytest.mark.parametrize("n", [3, 10, 257])
    def test_equals_half_power_route(self, n):
        rng = np.random.default_rng(1234 + n)
        for _ in range(100):
            v = rng.standard_normal(n)
            a = reconstruct_from_whitened(v, n)
            b = apply_sigma_half(v, n)
            scale = max(1.0, np.abs(b).max())
            assert np.abs(a - b).max() <= 1e-12 * scale

    def test_roundtrip_through_whitening(self):
        lap = sample_laplacian(8, "gaussian", 3)
        d = DiagonalVector.from_laplacian(lap)
        back = reconstruct_from_whitened(whiten(d).values, d.n)
        np.testing.assert_allclose(back, d.values, atol=1e-13)


class TestWhiteningMonteCarlo:
    def test_whitened_diagonal_is_standard_gaussian(self):
        # Gaussian entries: the rescaled diagonal is exactly a centered
        # Gaussian vector, so whitening must produce i.i.d. N(0,1)
        # components up to Monte Carlo error
        n, reps, master = 10, 20000, 987
        rows = np.empty((reps, n))
        for r in range(reps):
            diag = sample_laplacian_diagonal(n, "gaussian", substream_seed(master, r))
            d = DiagonalVector.from_raw_diagonal(diag)
            rows[r] = whiten(d).values

        means = rows.mean(axis=0)
        assert np.abs(means).max() <= 0.03

        cov = np.cov(rows, rowvar=False)
        assert np.abs(np.diag(cov) - 1.0).max() <= 0.05
        off = cov[~np.eye(n, dtype=bool)]
        assert np.abs(off).max() <= 0.05

        from scipy.special import ndtr

        emp = EmpiricalDistribution.from_samples(rows[:, 0])
        assert ks_statistic(emp, ndtr) <= 0.02

    def test_unwhitened_diagonal_keeps_designed_correlation(self):
        # opposite control: before whitening, off-diagonal correlation
        # sits near 1/(n-1), not near 0
        n, reps, master = 5, 20000, 55
        rows = np.empty((reps, n))
        for r in range(reps):
            diag = sample_laplacian_diagonal(n, "gaussian", substream_seed(master, r))
            rows[r] = DiagonalVector.from_raw_diagonal(diag).values
        cov = np.cov(rows, rowvar=False)
        off = cov[~np.eye(n, dtype=bool)]
        assert abs(off.mean() - 1.0 / (n - 1)) <= 0.02
