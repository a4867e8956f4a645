import math

import numpy as np
import pytest

from randpoly.analytic import (CertificationError, certified_upper_bound,
                               discrete_slepian_check, en_asymptote,
                               exponent_bounds, kac_en, lemma_b_constants,
                               tridiag_det, vn_asymptote)
from randpoly.analytic import _kac_integrand
from randpoly.polycore import inv_series_corr


class TestKacEn:
    def test_degree_one_is_exactly_one(self):
        # a0 + a1 x has one real zero almost surely
        r = kac_en(1)
        assert r.E_n == pytest.approx(1.0, abs=1e-8)

    def test_degree_two_reference(self):
        # independent 50-digit quadrature of the same density
        assert kac_en(2).E_n == pytest.approx(1.2970235741316044, rel=1e-12)

    def test_degree_64_reference(self):
        assert kac_en(64).E_n == pytest.approx(3.2831758526802315, rel=1e-11)

    def test_monotone_in_degree(self):
        vals = [kac_en(n).E_n for n in (1, 2, 3, 5, 8, 16, 32, 64, 128, 512)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_log_growth_window(self):
        r = kac_en(10_000)
        ratio = r.E_n / en_asymptote(10_000)
        assert 1.0 <= ratio <= 1.2
        assert ratio == pytest.approx(1.10673, abs=1e-4)

    def test_reported_error_is_small(self):
        for n in (1, 7, 100, 10_000):
            assert kac_en(n).abs_err <= 1e-8

    def test_rejects_nonpositive_degree(self):
        with pytest.raises(ValueError):
            kac_en(0)

    def test_integrand_against_high_precision(self):
        # spans the series branch (|m log t| <= 1/4) and the direct branch
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 40
        for m, t in [(3, 0.5), (3, 0.97), (65, 0.9), (65, 0.999),
                     (10001, 0.999), (10001, 0.9999999)]:
            a = mp.log(mp.mpf(t))
            val = mp.csch(a) ** 2 - m * m * mp.csch(m * a) ** 2
            ref = float(mp.sqrt(val) / (2 * mp.mpf(t)))
            assert _kac_integrand(t, m) == pytest.approx(ref, rel=1e-12)

    def test_integrand_vanishes_at_left_edge(self):
        assert _kac_integrand(0.0, 5) == 0.0
        assert _kac_integrand(-1.0, 5) == 0.0


class TestAsymptotes:
    def test_en_formula(self):
        for n in (10, 1000, 10**6):
            assert en_asymptote(n) == pytest.approx(2.0 / math.pi * math.log(n), rel=1e-15)

    def test_vn_to_en_ratio(self):
        # variance growth is 2(1 - 2/pi) times the mean growth
        assert vn_asymptote(50) / en_asymptote(50) == pytest.approx(
            2.0 * (1.0 - 2.0 / math.pi), rel=1e-12)

    def test_rejects_degenerate_degree(self):
        with pytest.raises(ValueError):
            en_asymptote(1)
        with pytest.raises(ValueError):
            vn_asymptote(1)


class TestLemmaConstants:
    def test_printed_digits(self):
        c = lemma_b_constants()
        assert f"{c.rho:.6f}" == "0.163071"
        assert f"{c.lambda0:.6f}" == "0.029361"
        assert f"{c.lam:.4f}" == "1.3555"
        assert f"{c.log_ratio:.4f}" == "-1.0228"

    def test_certifies_unit_decay(self):
        assert lemma_b_constants().log_ratio <= -1.0

    def test_against_high_precision_sums(self):
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 40
        rho = 2 * mp.exp(mp.mpf(-5) / 2) / (1 + mp.exp(-5))
        lam0 = mp.nsum(lambda i: 4 * mp.exp(mp.mpf(-5) * i / 2) / (1 + mp.exp(-5 * i)),
                       [2, mp.inf])
        c = lemma_b_constants()
        assert c.rho == pytest.approx(float(rho), rel=1e-14)
        assert c.lambda0 == pytest.approx(float(lam0), rel=1e-12)

    def test_row_sum_identity(self):
        c = lemma_b_constants()
        assert c.lam == 1.0 + 2.0 * c.rho + c.lambda0


class TestTridiagDet:
    def test_matches_dense_determinant(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            n = int(rng.integers(1, 40))
            d = float(rng.uniform(1.5, 3.0))
            o = float(rng.uniform(-0.6, 0.6))
            M = np.diag(np.full(n, d))
            if n > 1:
                M += np.diag(np.full(n - 1, o), 1) + np.diag(np.full(n - 1, o), -1)
            assert tridiag_det(n, d, o) == pytest.approx(np.linalg.det(M), rel=1e-9)

    def test_chebyshev_case(self):
        # diag 2, off 1: determinant is n + 1
        for n in (1, 2, 7, 30):
            assert tridiag_det(n, 2.0, 1.0) == pytest.approx(n + 1.0, rel=1e-12)

    def test_rejects_empty_matrix(self):
        with pytest.raises(ValueError):
            tridiag_det(0, 2.0, 0.5)


class TestCertifiedBound:
    def test_dominated_by_half_rate_decay(self):
        for n in range(1, 51):
            assert certified_upper_bound(n) <= math.exp(-0.5 * n)

    def test_strictly_decreasing(self):
        vals = [certified_upper_bound(n) for n in range(1, 51)]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_frozen_endpoint(self):
        assert certified_upper_bound(50) == pytest.approx(7.731671232083553e-12, rel=1e-10)

    def test_exponent_window(self):
        assert exponent_bounds() == (0.4, 2.0)


class TestDiscreteSlepianCheck:
    def test_two_point_closed_form(self):
        # P(both <= 0) for correlation rho: 1/4 + arcsin(rho)/(2 pi)
        est = discrete_slepian_check(2, trials=200_000, seed=17)
        p2 = 0.27607001860530373
        sigma = math.sqrt(p2 * (1.0 - p2) / est.trials)
        assert abs(est.p_hat - p2) <= 4.0 * sigma
        assert est.ci_low <= p2 <= est.ci_high

    def test_upper_confidence_under_certified_bound(self):
        est = discrete_slepian_check(4, trials=100_000, seed=23)
        assert est.ci_high <= math.exp(-2.0)
        assert est.ci_high <= certified_upper_bound(4)

    def test_deterministic(self):
        a = discrete_slepian_check(3, trials=5000, seed=9)
        b = discrete_slepian_check(3, trials=5000, seed=9)
        assert a == b

    def test_chunk_boundary(self):
        est = discrete_slepian_check(2, trials=(1 << 16) + 1, seed=3)
        assert est.trials == (1 << 16) + 1
        assert est.p_hat == est.successes / est.trials

    def test_validation(self):
        with pytest.raises(ValueError):
            discrete_slepian_check(1, trials=10, seed=0)
        with pytest.raises(ValueError):
            discrete_slepian_check(13, trials=10, seed=0)
        with pytest.raises(ValueError):
            discrete_slepian_check(4, trials=0, seed=0)


class TestCorrelationGapSandwich:
    """The near-diagonal gap of the geometric-series correlation.

    With z = 1 - x, w = 1 - y the reciprocal correlation factors as
    1/corr = (z+w)/(2 sqrt(zw)) restricted by a gap term; the gap times
    max(z,w) is pinched between (w-z)^2/8 and (w-z)^2 on (0, 1/2]^2.
    """

    @staticmethod
    def _gap_parts(z, w):
        denom = 1.0 - w * z / (w + z)
        gap = denom - np.sqrt(1.0 - z / 2.0) * np.sqrt(1.0 - w / 2.0)
        return gap, denom

    def test_pinched_both_sides(self):
        rng = np.random.default_rng(2027)
        z = rng.uniform(0.0, 0.5, size=10_000)
        w = rng.uniform(0.0, 0.5, size=10_000)
        keep = (z > 0) & (w > 0)
        z, w = z[keep], w[keep]
        gap, denom = self._gap_parts(z, w)
        q = gap * np.maximum(z, w) / denom
        lo = (w - z) ** 2 / 8.0
        hi = (w - z) ** 2
        assert np.all(q >= lo - 1e-15)
        assert np.all(q <= hi + 1e-15)

    def test_factorization_matches_correlation(self):
        rng = np.random.default_rng(11)
        z = rng.uniform(1e-3, 0.5, size=2000)
        w = rng.uniform(1e-3, 0.5, size=2000)
        gap, denom = self._gap_parts(z, w)
        recip = (z + w) / (2.0 * np.sqrt(z * w)) / (1.0 - gap / denom)
        np.testing.assert_allclose(recip, inv_series_corr(1.0 - z, 1.0 - w), rtol=1e-10)

    def test_vanishes_on_diagonal(self):
        z = np.linspace(0.01, 0.5, 100)
        gap, denom = self._gap_parts(z, z.copy())
        q = gap * z / denom
        assert np.all(np.abs(q) < 1e-15)
