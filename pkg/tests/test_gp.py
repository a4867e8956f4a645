import math

import numpy as np
import pytest
import scipy.integrate

from randpoly.gp import (GridPath, PathSpec, covariance, fourier_cos_transform,
                         gaussian_path_block, ou_path_block, sample_ou,
                         sample_path, sample_y_alpha, spectral_density)
from randpoly.rng import trial_stream

S_AT_ONE = 2 * math.pi / math.cosh(math.pi)  # closed-form density at frequency 1


class TestCovariance:
    def test_unit_variance_all_kinds(self):
        for kind in ("sech", "damped", "ou"):
            assert covariance(kind, 0.0) == pytest.approx(1.0)
        assert covariance("mix", 0.0, alpha=0.3) == pytest.approx(1.0)

    def test_sech_value(self):
        assert covariance("sech", 1.0) == pytest.approx(1 / math.cosh(0.5), rel=1e-14)

    def test_damped_value(self):
        tau = 1.7
        want = (2 * math.exp(-tau) - math.exp(-2 * tau)) / math.cosh(tau / 2)
        assert covariance("damped", tau) == pytest.approx(want, rel=1e-14)

    def test_mixture_identity(self):
        # (1-a)*R_sech + a*R_damped == sech(tau/2) * (1 - a*(1 - e^{-|tau|})^2)
        tau = np.linspace(-8, 8, 401)
        for a in (0.0, 0.3, 0.5, 1.0):
            mix = covariance("mix", tau, alpha=a)
            closed = (1 - a * (1 - np.exp(-np.abs(tau))) ** 2) / np.cosh(tau / 2)
            np.testing.assert_allclose(mix, closed, rtol=1e-13, atol=1e-15)
            split = (1 - a) * covariance("sech", tau) + a * covariance("damped", tau)
            np.testing.assert_allclose(mix, split, rtol=1e-13)

    def test_even_in_tau(self):
        tau = np.linspace(0, 10, 101)
        for kind in ("sech", "damped", "ou"):
            np.testing.assert_array_equal(covariance(kind, tau), covariance(kind, -tau))

    def test_sech_dominates_ou(self):
        tau = np.linspace(0.0, 50.0, 5001)
        assert np.all(covariance("sech", tau) >= covariance("ou", tau) - 1e-15)

    def test_no_overflow_large_tau(self):
        assert covariance("sech", 2000.0) == 0.0 or covariance("sech", 2000.0) > 0
        assert np.isfinite(covariance("damped", 1500.0))

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            covariance("brown", 1.0)


class TestSpectralDensity:
    def test_value_at_zero(self):
        assert spectral_density("sech", 0.0) == pytest.approx(2 * math.pi, rel=1e-14)

    def test_value_at_one(self):
        assert spectral_density("sech", 1.0) == pytest.approx(S_AT_ONE, rel=1e-14)

    def test_inverse_transform_recovers_variance(self):
        val, err = scipy.integrate.quad(lambda w: spectral_density("sech", w),
                                        -np.inf, np.inf, epsabs=1e-12)
        assert val / (2 * math.pi) == pytest.approx(1.0, abs=1e-8)

    def test_nonnegative(self):
        w = np.linspace(-6, 6, 121)
        assert np.all(spectral_density("sech", w) >= 0)
        assert np.all(spectral_density("ou", w) > 0)
        for wi in (-3.0, -0.7, 0.0, 0.9, 2.5):
            assert spectral_density("damped", wi) >= 0

    def test_transform_oracle_matches_closed_form(self):
        for w in (0.0, 0.5, 1.0, 2.0, 5.0):
            got = fourier_cos_transform("sech", w)
            want = spectral_density("sech", w)
            assert got == pytest.approx(want, rel=1e-6)

    def test_transform_oracle_ou(self):
        for w in (0.0, 0.8, 2.0):
            got = fourier_cos_transform("ou", w)
            assert got == pytest.approx(4 / (1 + 4 * w * w), rel=1e-8)

    def test_damped_density_via_transform(self):
        for w in (0.0, 1.0):
            got = fourier_cos_transform("damped", w)
            want = spectral_density("damped", w)
            assert got == pytest.approx(want, rel=1e-6)


class TestPathSpec:
    def test_npoints(self):
        assert PathSpec("sech", 16.0, 0.01).npoints == 1601
        assert PathSpec("sech", 1.0, 0.25).npoints == 5

    def test_validation(self):
        with pytest.raises(ValueError):
            PathSpec("sech", 8.0, -0.1)
        with pytest.raises(ValueError):
            PathSpec("nope", 8.0, 0.1)
        with pytest.raises(ValueError):
            PathSpec("mix", 8.0, 0.1, alpha=1.5)


class TestSamplePath:
    def test_shape_and_dt(self):
        spec = PathSpec("sech", 4.0, 0.05)
        p = sample_path(spec, trial_stream(0, 0))
        assert isinstance(p, GridPath)
        assert len(p.values) == spec.npoints
        assert p.dt == 0.05

    def test_deterministic(self):
        spec = PathSpec("sech", 4.0, 0.05)
        a = sample_path(spec, trial_stream(5, 1)).values
        b = sample_path(spec, trial_stream(5, 1)).values
        np.testing.assert_array_equal(a, b)

    def test_marginal_variance(self):
        # pooled variance over many exact paths concentrates hard around 1
        spec = PathSpec("sech", 10.0, 0.05)
        X = gaussian_path_block(spec, 11, 0, 2500)
        v = X.var()
        assert 0.98 < v < 1.02

    def test_lag_autocovariance(self):
        spec = PathSpec("sech", 10.0, 0.05)
        X = gaussian_path_block(spec, 13, 0, 2500)
        for k in (1, 10, 40):
            prods = (X[:, :-k] * X[:, k:]).mean(axis=1)
            se = prods.std(ddof=1) / math.sqrt(len(prods))
            want = covariance("sech", k * spec.dt)
            assert abs(prods.mean() - want) < 4 * se

    def test_all_kinds_sample(self):
        for kind in ("sech", "damped", "ou"):
            spec = PathSpec(kind, 2.0, 0.1)
            assert len(sample_path(spec, trial_stream(1, 1)).values) == 21
        spec = PathSpec("mix", 2.0, 0.1, alpha=0.4)
        assert len(sample_path(spec, trial_stream(1, 1)).values) == 21


class TestSampleOU:
    def test_exact_lag_covariance(self):
        spec = PathSpec("ou", 10.0, 0.05)
        X = ou_path_block(spec, 17, 0, 4000)
        assert abs(X.var() - 1.0) < 0.02
        for k in (1, 10):
            prods = (X[:, :-k] * X[:, k:]).mean(axis=1)
            se = prods.std(ddof=1) / math.sqrt(len(prods))
            want = math.exp(-0.5 * k * spec.dt)
            assert abs(prods.mean() - want) < 4 * se

    def test_refined_grid_same_law_on_common_points(self):
        # the AR(1) step is exact, so transition over dt equals two over dt/2
        a1 = math.exp(-0.5 * 0.1)
        a2 = math.exp(-0.5 * 0.05)
        assert a1 == pytest.approx(a2 * a2, rel=1e-15)
        assert 1 - a1 * a1 == pytest.approx((1 - a2 * a2) * (1 + a2 * a2), rel=1e-14)

    def test_sample_ou_entry_point(self):
        spec = PathSpec("ou", 2.0, 0.1)
        p = sample_ou(spec, trial_stream(19, 0))
        q = sample_path(spec, trial_stream(19, 0))
        np.testing.assert_array_equal(p.values, q.values)


class TestMixtureSampler:
    def test_alpha_zero_matches_base_sampler(self):
        spec = PathSpec("sech", 6.0, 0.05)
        y = sample_path(spec, trial_stream(23, 4)).values
        m = sample_y_alpha(0.0, spec, trial_stream(23, 4)).values
        np.testing.assert_array_equal(y, m)

    def test_alpha_one_is_pure_damped(self):
        # alpha=1 keeps only the damped component; check its autocovariance
        spec = PathSpec("damped", 8.0, 0.05)
        rows = []
        for j in range(1500):
            rows.append(sample_y_alpha(1.0, spec, trial_stream(29, j)).values)
        X = np.vstack(rows)
        k = 10
        prods = (X[:, :-k] * X[:, k:]).mean(axis=1)
        se = prods.std(ddof=1) / math.sqrt(len(prods))
        assert abs(prods.mean() - covariance("damped", k * spec.dt)) < 4 * se

    def test_half_mixture_autocovariance(self):
        spec = PathSpec("mix", 8.0, 0.05, alpha=0.5)
        rows = []
        for j in range(1500):
            rows.append(sample_y_alpha(0.5, spec, trial_stream(31, j)).values)
        X = np.vstack(rows)
        for k in (1, 20):
            prods = (X[:, :-k] * X[:, k:]).mean(axis=1)
            se = prods.std(ddof=1) / math.sqrt(len(prods))
            want = covariance("mix", k * spec.dt, alpha=0.5)
            assert abs(prods.mean() - want) < 4 * se

    def test_alpha_validated(self):
        spec = PathSpec("sech", 2.0, 0.1)
        with pytest.raises(ValueError):
            sample_y_alpha(-0.1, spec, trial_stream(0, 0))


class TestBlockSamplers:
    def test_chunking_invariant(self):
        spec = PathSpec("sech", 4.0, 0.05)
        whole = gaussian_path_block(spec, 37, 0, 4)
        tail = gaussian_path_block(spec, 37, 2, 2)
        np.testing.assert_array_equal(whole[4:8], tail)

    def test_ou_chunking_invariant(self):
        spec = PathSpec("ou", 4.0, 0.05)
        whole = ou_path_block(spec, 41, 0, 8)
        tail = ou_path_block(spec, 41, 5, 3)
        np.testing.assert_array_equal(whole[5:8], tail)

    def test_pair_rows_independent(self):
        spec = PathSpec("sech", 6.0, 0.05)
        X = gaussian_path_block(spec, 43, 0, 3000)
        # Re/Im parts of one transform are independent path draws
        r = float(np.corrcoef(X[0::2, 40], X[1::2, 40])[0, 1])
        assert abs(r) < 0.06

    def test_gram_positive_definite(self):
        for dt in (0.01, 0.05, 0.1):
            m = 512
            tau = dt * np.arange(m)
            R = covariance("damped", np.abs(tau[:, None] - tau[None, :]))
            L = np.linalg.cholesky(R + 1e-12 * np.eye(m))
            assert np.all(np.isfinite(L))
