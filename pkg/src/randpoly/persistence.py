"""Persistence probabilities P(sup path <= level) and the decay exponent.

The central quantity: for a stationary Gaussian path Y on [0, T],
P(sup Y <= 0) decays like e^{-theta T}, and the polynomial no-real-zero
exponent is b = 4 theta for the sech(t/2) kernel.  This module estimates the
probability by plain Monte Carlo (exact samplers from :mod:`.gp`), converts
to exponent estimates with Wilson-interval error bars, and cross-checks
against the one closed form available — the e^{-|tau|/2} kernel, whose
persistence probability is (1/pi) arctan(1/sqrt(e^T - 1)).

Determinism: every trial's outcome is a pure function of (seed, substream
index), so estimates do not depend on chunk sizes or execution order.  For
FFT-sampled kernels one substream drives a *pair* of trials (2j, 2j+1) —
the real and imaginary parts of one complex transform are two independent
paths, halving sampling cost; the pairing is fixed, not schedule-dependent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gp import PathSpec, gaussian_path_block, ou_path_block
from .rng import trial_stream

__all__ = [
    "MCEstimate",
    "CurvePoint",
    "PersistenceCurve",
    "LevelExtinctionError",
    "wilson_interval",
    "persist_prob",
    "ou_persist_exact",
    "estimate_b",
    "splitting_persist",
    "refinement_check",
]

_Z95 = 1.959963984540054

# substream index base for the sequential stages of the splitting estimator,
# far above any realistic trial index
_STAGE_BASE = 1 << 48


class LevelExtinctionError(RuntimeError):
    """A splitting stage ran out of survivors."""


def wilson_interval(successes: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    """95% (by default) Wilson score interval for a binomial proportion.

    Preferred over the Wald interval because it stays honest when the
    success count is tiny -- the regime rare-event estimates live in.
    """
    if not 0 <= successes <= trials or trials <= 0:
        raise ValueError("need 0 <= successes <= trials, trials >= 1")
    n = trials
    p = successes / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2 * n)) / denom
    half = z * math.sqrt(p * (1.0 - p) / n + z * z / (4 * n * n)) / denom
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == n else min(1.0, center + half)
    return lo, hi


@dataclass(frozen=True)
class MCEstimate:
    """A Monte Carlo persistence estimate with its 95% Wilson interval."""

    trials: int
    successes: int
    p_hat: float
    ci_low: float
    ci_high: float
    seed: int
    spec: PathSpec


def _estimate(successes: int, trials: int, seed: int, spec: PathSpec) -> MCEstimate:
    lo, hi = wilson_interval(successes, trials)
    return MCEstimate(trials, successes, successes / trials, lo, hi, seed, spec)


def _success_count(spec: PathSpec, trials: int, seed: int) -> int:
    """Count trials whose path maximum stays at or below spec.level."""
    level = spec.level
    n = spec.npoints
    total = 0
    if spec.kind == "ou":
        chunk = max(256, (1 << 22) // max(n, 1))
        done = 0
        while done < trials:
            rows = min(chunk, trials - done)
            block = ou_path_block(spec, seed, done, rows)
            total += int(np.count_nonzero(block.max(axis=1) <= level))
            done += rows
        return total
    pairs = (trials + 1) // 2
    chunk = max(64, min(1024, (1 << 21) // max(n, 1)))
    done = 0
    while done < pairs:
        rows = min(chunk, pairs - done)
        block = gaussian_path_block(spec, seed, done, rows)
        first = 2 * done
        take = min(2 * rows, trials - first)
        total += int(np.count_nonzero(block[:take].max(axis=1) <= level))
        done += rows
    return total


def persist_prob(spec: PathSpec, trials: int, seed: int) -> MCEstimate:
    """Estimate P(sup_{[0,T]} X <= level) over the uniform grid of ``spec``.

    Success means max(path values) <= spec.level.  Sharing the seed across
    calls that differ only in level yields *pathwise identical* paths, so
    level monotonicity of the estimate is exact, not statistical.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    return _estimate(_success_count(spec, trials, seed), trials, seed, spec)


def ou_persist_exact(T: float) -> float:
    """Closed-form P(sup_{[0,T]} X <= 0) for the e^{-|tau|/2} kernel.

    Equals (1/pi) arctan(1/sqrt(e^T - 1)): the time change mapping this
    process to scaled Brownian motion reduces the event to a first-quadrant
    orthant probability.  Decays like (1/pi) e^{-T/2}, i.e. exponent 2 on
    the polynomial scale.
    """
    if T <= 0:
        raise ValueError("T must be > 0")
    return math.atan(1.0 / math.sqrt(math.expm1(T))) / math.pi


@dataclass(frozen=True)
class ContinuumEstimate:
    """Mean-of-products estimate of a continuum persistence probability."""

    p_hat: float
    stderr: float
    trials: int
    seed: int
    T: float
    dt: float


def ou_persist_continuum(T: float, dt: float, trials: int, seed: int) -> ContinuumEstimate:
    """Unbiased estimate of the *continuum* P(sup_{[0,T]} X <= 0), OU kernel.

    A grid-supremum estimate overshoots the closed form by O(sqrt(dt))
    relative — paths can poke above zero between grid points.  Here the
    time change X_t = e^{-t/2} W(e^t) (W a Brownian motion with
    W(1) ~ N(0,1)) removes that bias exactly: zero crossings of X and W
    coincide, grid values are sampled exactly, and between grid points W is
    a Brownian bridge whose zero-crossing probability given endpoints
    a, b < 0 is e^{-2ab/delta}.  Averaging the per-path product of
    non-crossing probabilities (zero if any grid value is positive) is then
    unbiased for the continuum probability, with smaller-than-binomial
    variance.  The grid ends exactly at T (final step shortened if needed).
    """
    if T <= 0 or dt <= 0 or trials < 1:
        raise ValueError("need T > 0, dt > 0, trials >= 1")
    n_unif = int(math.floor(T / dt + 1e-12))
    times = np.arange(n_unif + 1) * dt
    if times[-1] < T - 1e-12 * max(1.0, T):
        times = np.append(times, T)
    ncol = len(times)
    steps = np.diff(times)
    coeff = np.exp(-0.5 * steps)
    scale = np.sqrt(1.0 - coeff * coeff)
    u = np.exp(times)
    du = np.diff(u)
    half_exp = np.exp(0.5 * times)

    total = 0.0
    total_sq = 0.0
    chunk = max(256, (1 << 21) // ncol)
    done = 0
    while done < trials:
        rows = min(chunk, trials - done)
        noise = np.empty((rows, ncol))
        for j in range(rows):
            trial_stream(seed, done + j).standard_normal(out=noise[j])
        paths = np.empty_like(noise)
        paths[:, 0] = noise[:, 0]
        for i in range(1, ncol):
            paths[:, i] = coeff[i - 1] * paths[:, i - 1] + scale[i - 1] * noise[:, i]
        neg = (paths <= 0.0).all(axis=1)
        w = paths * half_exp
        cross = np.exp(np.minimum(0.0, -2.0 * w[:, :-1] * w[:, 1:] / du))
        q = np.where(neg, np.prod(1.0 - cross, axis=1), 0.0)
        total += float(q.sum())
        total_sq += float((q * q).sum())
        done += rows
    p = total / trials
    var = max(0.0, total_sq / trials - p * p) / trials
    return ContinuumEstimate(p, math.sqrt(var), trials, seed, T, dt)


@dataclass(frozen=True)
class CurvePoint:
    t: float
    estimate: MCEstimate
    b_hat: float | None
    b_lo: float | None
    b_hi: float | None


@dataclass(frozen=True)
class PersistenceCurve:
    """Exponent estimates -4 log p_hat / T across horizons T.

    ``extinct_t`` records the first horizon whose estimate had zero
    successes; the curve is truncated there.
    """

    points: tuple[CurvePoint, ...]
    extinct_t: float | None = None

    @property
    def b_hat(self) -> float:
        if not self.points:
            raise LevelExtinctionError("no surviving horizons")
        return self.points[-1].b_hat

    @property
    def b_interval(self) -> tuple[float, float]:
        last = self.points[-1]
        return last.b_lo, last.b_hi

    @property
    def t_values(self) -> np.ndarray:
        return np.array([p.t for p in self.points])

    @property
    def b_values(self) -> np.ndarray:
        return np.array([p.b_hat for p in self.points])


def estimate_b(kind: str, t_list, dt: float, trials, seed: int,
               level: float = 0.0, alpha: float = 0.0) -> PersistenceCurve:
    """Persistence exponent estimates across a ladder of horizons.

    ``trials`` may be a single count or one per horizon.  Each b_hat carries
    an interval from the Wilson endpoints of p_hat: delta b = 4 delta(log p)/T,
    and since -4 log(.)/T is decreasing, the p-interval maps to
    [-4 log(ci_high)/T, -4 log(ci_low)/T].

    A horizon with zero successes truncates the curve (and is recorded on
    ``extinct_t``): an exponent cannot be read off log 0.
    """
    ts = [float(t) for t in t_list]
    if not ts or any(b <= a for a, b in zip(ts, ts[1:])) or ts[0] <= 0:
        raise ValueError("t_list must be positive and strictly increasing")
    counts = list(trials) if np.ndim(trials) else [int(trials)] * len(ts)
    if len(counts) != len(ts):
        raise ValueError("trials must be scalar or match t_list in length")
    points = []
    for t, n_tr in zip(ts, counts):
        spec = PathSpec(kind, t_max=t, dt=dt, level=level, alpha=alpha)
        est = persist_prob(spec, n_tr, seed)
        if est.successes == 0:
            return PersistenceCurve(tuple(points), extinct_t=t)
        b = -4.0 * math.log(est.p_hat) / t
        b_lo = -4.0 * math.log(est.ci_high) / t
        b_hi = -4.0 * math.log(est.ci_low) / t if est.ci_low > 0 else math.inf
        points.append(CurvePoint(t, est, b, b_lo, b_hi))
    return PersistenceCurve(tuple(points))


# --- multilevel splitting -------------------------------------------------

_SHAKE_CHUNK = 2048


def _latent_width(spec: PathSpec):
    """Latent shape suffix for one walker and the selected-part convention."""
    if spec.kind == "ou":
        return (spec.npoints,)
    from .gp import _embedding_sqrt
    emb = _embedding_sqrt(spec.kind, spec.alpha, spec.dt, spec.npoints)
    return (2, spec.npoints if emb is None else emb[1])


def _ou_maxima(spec: PathSpec, lat: np.ndarray) -> np.ndarray:
    import scipy.signal
    a = math.exp(-0.5 * spec.dt)
    noise = lat.copy()
    noise[:, 1:] *= math.sqrt(1.0 - a * a)
    return scipy.signal.lfilter([1.0], [1.0, -a], noise, axis=1).max(axis=1)


def _fft_maxima(spec: PathSpec, lat: np.ndarray, parts: np.ndarray) -> np.ndarray:
    import scipy.fft
    from .gp import _embedding_sqrt, _cholesky_factor
    n = spec.npoints
    emb = _embedding_sqrt(spec.kind, spec.alpha, spec.dt, n)
    if emb is None:
        L = _cholesky_factor(spec.kind, spec.alpha, spec.dt, n)
        paths = np.einsum("wkn,mn->wkm", lat, L)
        sel = paths[np.arange(len(lat)), parts]
        return sel.max(axis=1)
    sqrt_lam, M = emb
    z = (lat[:, 0, :] + 1j * lat[:, 1, :]) * sqrt_lam
    X = scipy.fft.fft(z, axis=1) / math.sqrt(M)
    return np.where(parts == 0, X.real[:, :n].max(axis=1), X.imag[:, :n].max(axis=1))


def _stage_maxima(spec: PathSpec, lat: np.ndarray, parts: np.ndarray) -> np.ndarray:
    if spec.kind == "ou":
        return _ou_maxima(spec, lat)
    return _fft_maxima(spec, lat, parts)


def _stage1_survivors(spec: PathSpec, trials: int, seed: int, level0: float):
    """Plain-MC first stage; returns (success count, survivor latents, parts).

    Runs the exact substream schedule of :func:`persist_prob`, keeping only
    the surviving walkers' latent states (per-chunk, so peak memory scales
    with survivors, not trials).
    """
    n = spec.npoints
    kept, kept_parts = [], []
    count = 0
    if spec.kind == "ou":
        chunk = max(256, (1 << 22) // n)
        done = 0
        while done < trials:
            rows = min(chunk, trials - done)
            lat = np.empty((rows, n))
            for j in range(rows):
                trial_stream(seed, done + j).standard_normal(out=lat[j])
            keep = _ou_maxima(spec, lat) <= level0
            count += int(np.count_nonzero(keep))
            if keep.any():
                kept.append(lat[keep])
            done += rows
        lat = np.concatenate(kept) if kept else np.empty((0, n))
        return count, lat, np.zeros(len(lat), dtype=np.intp)
    width = _latent_width(spec)
    pairs = (trials + 1) // 2
    chunk = max(64, min(1024, (1 << 21) // n))
    done = 0
    while done < pairs:
        rows = min(chunk, pairs - done)
        blocks = np.empty((rows,) + width)
        for j in range(rows):
            trial_stream(seed, done + j).standard_normal(out=blocks[j])
        take = min(2 * rows, trials - 2 * done)
        # per-block maxima for both parts, then interleave (re, im, re, im...)
        both = np.empty(2 * rows)
        both[0::2] = _fft_maxima(spec, blocks, np.zeros(rows, dtype=np.intp))
        both[1::2] = _fft_maxima(spec, blocks, np.ones(rows, dtype=np.intp))
        keep = both[:take] <= level0
        count += int(np.count_nonzero(keep))
        if keep.any():
            idx = np.flatnonzero(keep)
            kept.append(blocks[idx // 2])
            kept_parts.append(idx % 2)
        done += rows
    if kept:
        return count, np.concatenate(kept), np.concatenate(kept_parts)
    return count, np.empty((0,) + width), np.empty(0, dtype=np.intp)


def splitting_persist(spec: PathSpec, levels, trials_per_level: int, seed: int,
                      *, rho: float = 0.8, sweeps: int = 8) -> MCEstimate:
    """Multilevel-splitting estimate of P(sup path <= spec.level).

    ``levels`` must decrease strictly to ``spec.level``.  Stage 1 is plain
    Monte Carlo against levels[0] using exactly the substreams of
    :func:`persist_prob` (a single level therefore reproduces it verbatim).
    Each later stage resamples the survivors, refreshes them with
    autoregressive moves xi' = rho xi + sqrt(1-rho^2) eta on the latent
    Gaussians (accepted only while the path stays under the previous level
    -- a reversible kernel for the conditioned law), and measures the
    fraction passing the next level.  The product of stage fractions
    estimates the target probability.

    The interval is a delta-method (log-normal) product interval treating
    stages as independent; ``successes`` reports final-stage survivors.
    Raises :class:`LevelExtinctionError` if a stage has no survivors.
    """
    levels = [float(l) for l in levels]
    if not levels or any(b >= a for a, b in zip(levels, levels[1:])):
        raise ValueError("levels must be strictly decreasing")
    if levels[-1] != spec.level:
        raise ValueError("levels must end at spec.level")
    if not 0.0 < rho < 1.0:
        raise ValueError("rho must be in (0, 1)")
    if trials_per_level < 1:
        raise ValueError("trials_per_level must be >= 1")

    if len(levels) == 1:
        return persist_prob(spec, trials_per_level, seed)

    N = trials_per_level
    count1, lat, parts = _stage1_survivors(spec, N, seed, levels[0])
    fractions = [count1 / N]
    if count1 == 0:
        raise LevelExtinctionError(f"no survivors at level {levels[0]}")
    sig = math.sqrt(1.0 - rho * rho)

    for stage, lev in enumerate(levels[1:], start=1):
        st = trial_stream(seed, _STAGE_BASE + stage)
        pick = st.integers(0, len(lat), size=N)
        lat, parts = lat[pick].copy(), parts[pick]
        prev = levels[stage - 1]
        for _ in range(sweeps):
            for lo in range(0, N, _SHAKE_CHUNK):
                sl = slice(lo, min(lo + _SHAKE_CHUNK, N))
                cand = rho * lat[sl] + sig * st.standard_normal(lat[sl].shape)
                ok = _stage_maxima(spec, cand, parts[sl]) <= prev
                lat[sl][ok] = cand[ok]
        maxima = np.concatenate([
            _stage_maxima(spec, lat[lo:lo + _SHAKE_CHUNK], parts[lo:lo + _SHAKE_CHUNK])
            for lo in range(0, N, _SHAKE_CHUNK)])
        keep = maxima <= lev
        survivors = int(np.count_nonzero(keep))
        fractions.append(survivors / N)
        if survivors == 0:
            raise LevelExtinctionError(f"no survivors at level {lev}")
        lat, parts = lat[keep], parts[keep]

    p_hat = float(np.prod(fractions))
    var_log = sum((1.0 - f) / (f * N) for f in fractions)
    sd = math.sqrt(var_log)
    lo = p_hat * math.exp(-_Z95 * sd)
    hi = min(1.0, p_hat * math.exp(_Z95 * sd))
    return MCEstimate(N, survivors, p_hat, lo, hi, seed, spec)


def refinement_check(spec: PathSpec, trials: int, seed: int) -> tuple[MCEstimate, MCEstimate]:
    """Coupled (coarse, fine) estimates with the grid step halved.

    Both come from the same half-step paths -- the coarse estimate reads the
    even-index subgrid, a marginal distributed exactly as the coarse-grid
    sampler.  Since the fine maximum dominates the subgrid maximum pathwise,
    coarse.successes >= fine.successes always; any violation would be a bug,
    not noise.
    """
    fine_spec = PathSpec(spec.kind, spec.t_max, spec.dt / 2.0, spec.level, spec.alpha)
    level = spec.level
    coarse_n = 0
    fine_n = 0
    n = fine_spec.npoints

    def absorb(block):
        nonlocal coarse_n, fine_n
        fine_n += int(np.count_nonzero(block.max(axis=1) <= level))
        coarse_n += int(np.count_nonzero(block[:, ::2].max(axis=1) <= level))

    if spec.kind == "ou":
        chunk = max(256, (1 << 22) // n)
        done = 0
        while done < trials:
            rows = min(chunk, trials - done)
            absorb(ou_path_block(fine_spec, seed, done, rows))
            done += rows
    else:
        pairs = (trials + 1) // 2
        chunk = max(64, min(1024, (1 << 21) // n))
        done = 0
        while done < pairs:
            rows = min(chunk, pairs - done)
            block = gaussian_path_block(fine_spec, seed, done, rows)
            take = min(2 * rows, trials - 2 * done)
            absorb(block[:take])
            done += rows
    return (_estimate(coarse_n, trials, seed, spec),
            _estimate(fine_n, trials, seed, fine_spec))
