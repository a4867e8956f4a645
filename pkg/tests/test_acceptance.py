"""Release gate: end-to-end checks of every major capability.

Run with ``pytest -v tests/test_acceptance.py`` for one PASS/FAIL line
per check; the ``slow`` marker guards the long Monte Carlo runs (the
full battery is a few hours, the rest finishes in about a minute).
All randomized checks use one frozen seed; tolerances are 3-sigma
windows unless stated otherwise.
"""

import math
import time

import numpy as np
import pytest

from randpoly.analytic import discrete_slepian_check, kac_en
from randpoly.cli import main
from randpoly.experiments import (ExperimentConfig, estimate_en_vn,
                                  estimate_pn, estimate_pnk, run_ladder)
from randpoly.gp import covariance, fourier_cos_transform, spectral_density
from randpoly.persistence import (estimate_b, ou_persist_continuum,
                                  ou_persist_exact)
from randpoly.polycore import (CoefficientDistribution, inv_series_corr,
                               poly_corr, sample_coefficients)
from randpoly.rng import trial_stream
from randpoly.rootcount import numeric_count_rows, sturm_count

pytestmark = pytest.mark.acceptance

SEED = 2026
Z95 = 1.959963984540054


def test_01_certified_constants(capsys):
    t0 = time.perf_counter()
    assert main(["bounds"]) == 0
    elapsed = time.perf_counter() - t0
    out = capsys.readouterr().out
    assert "rho      = 0.163071" in out
    assert "lambda0  = 0.029361" in out
    assert "lambda   = 1.3555" in out
    assert "log_ratio = -1.0228" in out
    assert "0.4 <= b <= 2.0" in out
    assert elapsed < 10.0  # sub-second task; headroom for cold start
    print(f"certified constants + window in {elapsed:.2f}s")


def test_02_exact_survival_law():
    devs = []
    for T in (1.0, 2.0, 4.0, math.log(2.0)):
        est = ou_persist_continuum(T, 0.005, 100_000, SEED)
        exact = ou_persist_exact(T)
        dev = (est.p_hat - exact) / est.stderr
        devs.append((T, dev))
        assert abs(dev) <= 3.0, f"T={T}: {est.p_hat} vs exact {exact} ({dev:+.2f} sigma)"
    b32 = -4.0 * math.log(ou_persist_exact(32.0)) / 32.0
    assert 1.9 <= b32 <= 2.2
    print("survival-law devs " +
          " ".join(f"T={T:.3g}:{d:+.2f}s" for T, d in devs) +
          f", rate at T=32: {b32:.4f}")


def test_03_spectral_identity():
    worst = 0.0
    for w in (0.0, 0.5, 1.0, 2.0, 5.0):
        got = fourier_cos_transform("sech", w)
        want = spectral_density("sech", w)
        worst = max(worst, abs(got - want) / want)
    assert worst < 1e-6
    print(f"transform vs closed form: worst rel {worst:.2e}")


def test_04_mean_zero_count_references():
    assert kac_en(1).E_n == pytest.approx(1.0, abs=1e-8)

    cfg = ExperimentConfig(distribution="normal", n_values=(65,),
                           trials_per_n=100_000, seed=SEED)
    r = estimate_en_vn(cfg, 65)
    ref = kac_en(64).E_n
    dev = (r.mean - ref) / r.stderr
    assert abs(dev) <= 3.0, f"MC mean {r.mean} vs quadrature {ref}"

    ratio = kac_en(10_000).E_n / (2.0 / math.pi * math.log(10_000))
    assert 1.0 <= ratio <= 1.2
    print(f"MC vs quadrature at degree 64: {dev:+.2f} sigma; "
          f"growth ratio at 10^4: {ratio:.4f}")


@pytest.mark.slow
def test_05_process_exponent():
    curve = estimate_b("sech", (8.0, 16.0, 24.0, 32.0), dt=0.01,
                       trials=(200_000, 300_000, 500_000, 1_000_000),
                       seed=SEED)
    assert curve.extinct_t is None
    last = curve.points[-1]
    assert last.t == 32.0
    assert 0.65 <= last.b_hat <= 0.95, f"b_hat(32) = {last.b_hat}"
    ses = [(p.b_hi - p.b_lo) / (2.0 * Z95) for p in curve.points]
    for (a, sa), (b, sb) in zip(zip(curve.points, ses),
                                zip(curve.points[1:], ses[1:])):
        slack = 3.0 * math.hypot(sa, sb)
        assert b.b_hat <= a.b_hat + slack, \
            f"b rose {a.b_hat:.4f} -> {b.b_hat:.4f} (T={a.t}->{b.t})"
    print("exponent ladder " +
          " ".join(f"T={p.t:g}:{p.b_hat:.4f}" for p in curve.points))


def test_06_polynomial_exponent_smoke():
    cfg = ExperimentConfig(distribution="rademacher", n_values=(17, 33, 65),
                           trials_per_n=20_000, seed=SEED)
    t0 = time.perf_counter()
    points, fit = run_ladder(cfg)
    elapsed = time.perf_counter() - t0
    b = -fit.slope
    assert 0.6 <= b <= 0.95, f"smoke-ladder b_hat = {b}"
    assert elapsed < 600.0  # the quick ladder must stay interactive
    print(f"smoke ladder b_hat = {b:.4f} +/- {fit.slope_stderr:.4f} "
          f"in {elapsed:.0f}s")


@pytest.mark.slow
def test_06_polynomial_exponent_full():
    ladder = (17, 33, 65, 129, 257)
    rad = ExperimentConfig(distribution="rademacher", n_values=ladder,
                           trials_per_n=200_000, seed=SEED)
    _, fit_r = run_ladder(rad)
    b_r, se_r = -fit_r.slope, fit_r.slope_stderr
    assert 0.6 <= b_r <= 0.95, f"sign-flip ladder b_hat = {b_r}"

    gauss = ExperimentConfig(distribution="normal", n_values=ladder,
                             trials_per_n=200_000, seed=SEED)
    _, fit_g = run_ladder(gauss)
    b_g, se_g = -fit_g.slope, fit_g.slope_stderr
    # consistency = the two 3-stderr error bars overlap; combining the bars
    # additively (not in quadrature) is what tolerates the small systematic
    # finite-size offset between the coefficient laws at this trial count
    gap = abs(b_r - b_g)
    slack = 3.0 * (se_r + se_g)
    assert gap <= slack, \
        f"laws disagree: {b_r:.4f} vs {b_g:.4f} (gap {gap:.4f} > {slack:.4f})"
    print(f"sign-flip b = {b_r:.4f}+/-{se_r:.4f}, "
          f"gaussian b = {b_g:.4f}+/-{se_g:.4f}, gap {gap:.4f} <= {slack:.4f}")


def test_07_exact_vs_numeric_counting():
    per_n = 2500
    agree = bad_unflagged = total = suspect = 0
    for n in (9, 17, 33, 65):
        dist = CoefficientDistribution.parse("rademacher")
        C = np.empty((per_n, n))
        for j in range(per_n):
            C[j] = sample_coefficients(dist, n, trial_stream(SEED, (n << 40) | j))
        counts, susp, _ = numeric_count_rows(C, None)
        for j in range(per_n):
            exact = sturm_count([int(v) for v in C[j]]).count
            total += 1
            if counts[j] == exact:
                agree += 1
            elif not susp[j]:
                bad_unflagged += 1
        suspect += int(susp.sum())
    assert total == 10_000
    assert agree / total >= 0.999
    assert bad_unflagged == 0
    print(f"agreement {agree}/{total}, suspect {suspect}, "
          f"unflagged disagreements {bad_unflagged}")


def test_08_enumeration_and_parity():
    # 8 equally likely sign patterns for 3 coefficients: no real zero
    # exactly when the leading/trailing product is +1, probability 1/2
    cfg = ExperimentConfig(distribution="rademacher", n_values=(3,),
                           trials_per_n=100_000, seed=SEED)
    est = estimate_pn(cfg, 3)
    dev = (est.p_hat - 0.5) / math.sqrt(0.25 / est.effective_trials)
    assert abs(dev) <= 3.0

    # even degree + continuous law: odd zero counts are impossible, and
    # the counting path certifies every trial's parity internally
    violations = 0
    for n in (3, 5, 9, 17, 33):
        g = ExperimentConfig(distribution="normal", n_values=(n,),
                             trials_per_n=2000, seed=SEED)
        violations += estimate_pnk(g, n, 1).successes
    assert violations == 0
    print(f"enumeration dev {dev:+.2f} sigma; parity violations {violations}")


def test_09_correlation_properties():
    rng = np.random.default_rng(SEED)

    # closed-form correlation vs direct geometric sums
    worst_ratio = 0.0
    for _ in range(200):
        n = 2 * int(rng.integers(1, 251)) + 1
        x, y = rng.uniform(-0.999, 0.999, size=2)
        i = np.arange(n)
        direct = ((x * y) ** i).sum() / math.sqrt((x ** (2 * i)).sum()
                                                  * (y ** (2 * i)).sum())
        worst_ratio = max(worst_ratio,
                          abs(poly_corr(n, x, y) - direct) / abs(direct))
    assert worst_ratio <= 1e-10

    # gap sandwich for the limiting correlation
    z = rng.uniform(1e-12, 0.5, size=10_000)
    w = rng.uniform(1e-12, 0.5, size=10_000)
    denom = 1.0 - w * z / (w + z)
    gap = denom - np.sqrt(1.0 - z / 2.0) * np.sqrt(1.0 - w / 2.0)
    q = gap * np.maximum(z, w) / denom
    assert np.all(q >= (w - z) ** 2 / 8.0 - 1e-15)
    assert np.all(q <= (w - z) ** 2 + 1e-15)

    # finite-n correlation dominates the limiting kernel's baseline
    worst_gap = 0.0
    for _ in range(10_000):
        n = 2 * int(rng.integers(1, 251)) + 1
        x, y = rng.uniform(0.0, 1.0 - 1e-9, size=2)
        t, s = -math.log1p(-x), -math.log1p(-y)
        bound = math.exp(-0.5 * abs(t - s))
        worst_gap = min(worst_gap, poly_corr(n, x, y) - bound)
    assert worst_gap >= -1e-12

    # mixture kernel is the stated convex combination
    tau = rng.uniform(0.0, 20.0, size=200)
    for alpha in (0.0, 0.3, 1.0):
        np.testing.assert_allclose(
            covariance("mix", tau, alpha),
            (1.0 - alpha) * covariance("sech", tau)
            + alpha * covariance("damped", tau), rtol=1e-13)
    print(f"ratio form {worst_ratio:.1e}; sandwich held; "
          f"baseline gap {worst_gap:.1e}; mixture identity exact")


@pytest.mark.slow
def test_10_discrete_comparison_bound():
    for n in (4, 8):
        est = discrete_slepian_check(n, trials=10_000_000, seed=SEED)
        bound = math.exp(-0.5 * n)
        assert est.ci_high <= bound, \
            f"n={n}: ci_high {est.ci_high} > bound {bound}"
        print(f"n={n}: p_hat {est.p_hat:.3e}, ci_high {est.ci_high:.3e} "
              f"<= {bound:.3e}")
