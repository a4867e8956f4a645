"""Monte Carlo experiment driver: no-real-zero probabilities across degree
ladders, zero-count distributions and moments, exponent fits, zero-location
histograms, and reproducible file output.

Determinism contract: every trial draws its coefficients from a dedicated
substream keyed by (seed, ladder-rung n, trial index), and aggregation is
exact integer counting over fixed-size trial blocks — so results are
bit-identical for any worker count or chunk schedule.  Output files carry
the seed, package version, and a content hash of the full configuration in
every row; no timestamps, so reruns produce byte-identical files.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import __version__ as _VERSION
from .analytic import CertificationError
from .polycore import CoefficientDistribution, sample_coefficients
from .rng import trial_stream
from .rootcount import GridSpec, numeric_count_rows, sturm_count
from .persistence import wilson_interval

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "MCEstimate",
    "ExponentFit",
    "EnVnResult",
    "ZeroHistogram",
    "estimate_pn",
    "estimate_pnk",
    "estimate_en_vn",
    "fit_exponent",
    "zero_histogram",
    "run_ladder",
    "config_hash",
    "write_csv",
    "write_tsv",
    "write_json",
]

EXACT_DEGREE_LIMIT = 128  # big-integer chain cost grows ~quadratically past this
_TRIAL_BLOCK = 4096       # fixed work unit; must not influence any result


class ConfigError(ValueError):
    """Invalid experiment configuration (CLI exit code 2)."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Reproducible description of one polynomial zero-count experiment.

    ``n_values`` are coefficient counts (degree + 1); the default ladders
    elsewhere use odd counts, i.e. even degrees, where the no-zero event has
    positive probability.
    """

    distribution: CoefficientDistribution
    n_values: tuple[int, ...]
    trials_per_n: int
    seed: int
    grid: GridSpec = GridSpec()
    backend: str = "auto"
    output_path: str | None = None

    def __post_init__(self):
        if isinstance(self.distribution, str):
            object.__setattr__(self, "distribution",
                               CoefficientDistribution.parse(self.distribution))
        object.__setattr__(self, "n_values", tuple(int(v) for v in self.n_values))
        if not self.n_values or any(v < 2 for v in self.n_values):
            raise ConfigError("n_values must be nonempty, each >= 2")
        if self.trials_per_n < 1:
            raise ConfigError("trials_per_n must be >= 1")
        if self.backend not in ("exact", "numeric", "auto"):
            raise ConfigError(f"unknown backend {self.backend!r}")


@dataclass(frozen=True)
class MCEstimate:
    """One ladder-rung estimate; suspect trials are excluded from both the
    numerator and denominator, keeping p_hat interpretable and the potential
    bias auditable via ``excluded_suspect``."""

    n: int
    trials: int
    successes: int
    p_hat: float
    ci_low: float
    ci_high: float
    excluded_suspect: int
    seed: int

    @property
    def effective_trials(self) -> int:
        return self.trials - self.excluded_suspect


class EnVnResult(NamedTuple):
    mean: float
    variance: float
    stderr: float


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    slope_stderr: float
    points_used: int


# --- sampling & counting core --------------------------------------------

def _substream(seed: int, n: int, trial: int):
    # rung-disjoint trial substreams: ladder points stay independent while
    # estimate_pn / estimate_pnk / moments share draws exactly at fixed n
    return trial_stream(seed, (n << 40) | trial)


def _resolve_backend(cfg: ExperimentConfig, n: int) -> str:
    if cfg.backend == "exact":
        if not cfg.distribution.is_integer_valued:
            raise ConfigError(
                "exact backend requires an integer-valued coefficient law")
        return "exact"
    if cfg.backend == "numeric":
        return "numeric"
    if cfg.distribution.is_integer_valued and n - 1 <= EXACT_DEGREE_LIMIT:
        return "exact"
    return "numeric"


def _scan_block(cfg: ExperimentConfig, n: int, start: int, rows: int):
    """Zero counts and suspect flags for trials [start, start+rows)."""
    backend = _resolve_backend(cfg, n)
    dist = cfg.distribution
    C = np.empty((rows, n))
    exact_rows = None
    if dist.is_integer_valued:
        exact_rows = []
        for j in range(rows):
            r = sample_coefficients(dist, n, _substream(cfg.seed, n, start + j))
            exact_rows.append(r)
            C[j] = r
    else:
        for j in range(rows):
            C[j] = sample_coefficients(dist, n, _substream(cfg.seed, n, start + j))

    if backend == "exact":
        counts = np.fromiter(
            (sturm_count([int(v) for v in row]).count for row in exact_rows),
            dtype=np.int64, count=rows)
        return counts, np.zeros(rows, dtype=bool)

    counts, suspect, _ = numeric_count_rows(C, cfg.grid)
    if suspect.any() and exact_rows is not None:
        # integer law past the exact-backend cutoff: settle the flagged few
        for i in np.flatnonzero(suspect):
            counts[i] = sturm_count([int(v) for v in exact_rows[i]]).count
        suspect[:] = False
    return counts, suspect


def _scan_args(cfg, n, trials):
    return [(cfg, n, s, min(_TRIAL_BLOCK, trials - s))
            for s in range(0, trials, _TRIAL_BLOCK)]


def _scan_counts(cfg: ExperimentConfig, n: int, workers: int = 1):
    """(counts, suspect) across cfg.trials_per_n trials; schedule-invariant."""
    trials = cfg.trials_per_n
    parts_args = _scan_args(cfg, n, trials)
    if workers <= 1 or len(parts_args) == 1:
        parts = [_scan_block(*a) for a in parts_args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_scan_block_star, parts_args))
    counts = np.concatenate([p[0] for p in parts])
    suspect = np.concatenate([p[1] for p in parts])
    return counts, suspect


def _scan_block_star(args):
    return _scan_block(*args)


def _binomial_estimate(n, trials, successes, excluded, seed) -> MCEstimate:
    eff = trials - excluded
    if eff <= 0:
        raise RuntimeError("all trials excluded as suspect")
    lo, hi = wilson_interval(successes, eff)
    return MCEstimate(n, trials, successes, successes / eff, lo, hi, excluded, seed)


def estimate_pn(cfg: ExperimentConfig, n: int, workers: int = 1) -> MCEstimate:
    """Fraction of degree-(n-1) samples with no real zero at all.

    Even n (odd degree) is allowed but trivially yields 0 — a warning points
    that out.  Suspect numeric trials (sign-ambiguous within tolerance) are
    dropped from both sides of the ratio and reported.
    """
    if n % 2 == 0:
        warnings.warn(f"n={n} has odd degree: every sample has a real zero",
                      stacklevel=2)
    counts, suspect = _scan_counts(cfg, n, workers)
    ok = ~suspect
    successes = int(np.count_nonzero(counts[ok] == 0))
    return _binomial_estimate(n, cfg.trials_per_n, successes,
                              int(suspect.sum()), cfg.seed)


def estimate_pnk(cfg: ExperimentConfig, n: int, k: int, workers: int = 1) -> MCEstimate:
    """Fraction of samples with exactly k distinct real zeros.

    For continuous coefficient laws the distinct count must match the degree
    parity (complex zeros pair up; multiple zeros have probability zero), so
    any observed off-parity count is an oracle mismatch and raises
    CertificationError.  Atomic laws (e.g. sign flips) genuinely produce
    multiple zeros, so no parity check applies there.
    """
    if k < 0:
        raise ConfigError("k must be >= 0")
    counts, suspect = _scan_counts(cfg, n, workers)
    ok = ~suspect
    if cfg.distribution.kind != "rademacher":
        bad = int(np.count_nonzero((counts[ok] & 1) != ((n - 1) & 1)))
        if bad:
            raise CertificationError(
                f"{bad} trials with zero counts off the degree parity "
                f"(continuous law, n={n})")
    successes = int(np.count_nonzero(counts[ok] == k))
    return _binomial_estimate(n, cfg.trials_per_n, successes,
                              int(suspect.sum()), cfg.seed)


def estimate_en_vn(cfg: ExperimentConfig, n: int, workers: int = 1) -> EnVnResult:
    """Sample mean and variance of the distinct-zero count, with the mean's
    standard error."""
    if cfg.trials_per_n < 2:
        raise ConfigError("need trials_per_n >= 2 for a variance")
    counts, suspect = _scan_counts(cfg, n, workers)
    vals = counts[~suspect]
    if len(vals) < 2:
        raise RuntimeError("fewer than 2 usable trials")
    mean = float(vals.mean())
    var = float(vals.var(ddof=1))
    return EnVnResult(mean, var, math.sqrt(var / len(vals)))


def fit_exponent(points) -> ExponentFit:
    """Weighted least squares of log p_hat on log n.

    Weights are the inverse variance of log p_hat, read off the Wilson
    interval width in log space (which degrades gracefully when p_hat is 0
    or 1, where the delta-method variance breaks down).  The slope estimates
    -exponent.  With more than two points the standard error is scaled by
    the weighted residual chi^2 (so an exact power law reports stderr 0);
    with exactly two points it falls back to the known-variance formula.
    """
    usable = [(n, est) for n, est in points
              if est.successes > 0 and est.ci_low > 0.0]
    if len(usable) < 2:
        raise ValueError("need >= 2 points with successes > 0 to fit")
    z = 1.959963984540054
    x = np.array([math.log(n) for n, _ in usable])
    y = np.array([math.log(est.p_hat) for _, est in usable])
    sd = np.array([(math.log(est.ci_high) - math.log(est.ci_low)) / (2 * z)
                   for _, est in usable])
    w = 1.0 / np.maximum(sd, 1e-300) ** 2
    W = w.sum()
    xb = (w * x).sum() / W
    yb = (w * y).sum() / W
    sxx = (w * (x - xb) ** 2).sum()
    if sxx <= 0:
        raise ValueError("degenerate fit: all n equal")
    slope = float((w * (x - xb) * (y - yb)).sum() / sxx)
    intercept = float(yb - slope * xb)
    k = len(usable)
    if k > 2:
        chi2 = float((w * (y - slope * x - intercept) ** 2).sum())
        scale = chi2 / (k - 2)
    else:
        scale = 1.0
    stderr = math.sqrt(scale / sxx)
    return ExponentFit(slope, intercept, stderr, k)


def run_ladder(cfg: ExperimentConfig, workers: int = 1):
    """estimate_pn across cfg.n_values plus the exponent fit.

    Returns (points, fit) with points = [(n, MCEstimate), ...]; rungs with
    zero successes are kept in points but skipped by the fit.
    """
    points = [(n, estimate_pn(cfg, n, workers)) for n in cfg.n_values]
    fit = fit_exponent(points)
    return points, fit


# --- zero-location histogram ---------------------------------------------

_REGIMES = ("pos_in", "pos_out", "neg_in", "neg_out")
_BRANCH_REGIME = {"d": 0, "r": 1, "n": 2, "nr": 3}


@dataclass(frozen=True)
class ZeroHistogram:
    """Zero locations aggregated in the boundary-layer coordinate
    t = -log(1 - |x|) (inside branches) / -log(1 - 1/|x|) (outside).

    ``counts`` has one row per regime (x near +1 inside/outside, near -1
    inside/outside) and one final overflow column holding t >= edges[-1],
    including roots at exactly |x| = 1 (t = infinity).
    """

    n: int
    edges: np.ndarray
    counts: np.ndarray
    total: int
    near_unit: int
    trials: int
    excluded_suspect: int
    seed: int

    @property
    def regimes(self) -> tuple[str, ...]:
        return _REGIMES

    @property
    def near_unit_fraction(self) -> float:
        """Share of zeros with |1 - |x|| < 0.5."""
        return self.near_unit / self.total if self.total else float("nan")


def zero_histogram(cfg: ExperimentConfig, n: int, workers: int = 1,
                   bin_width: float = 0.5) -> ZeroHistogram:
    """Histogram of root locations for cfg.trials_per_n degree-(n-1) samples.

    Uses the numeric scanner's located roots (the branch coordinate u maps
    to t = -log(1-u) in every regime); suspect trials are excluded entirely
    so the bookkeeping invariant total == counts.sum() is exact.
    """
    grid = cfg.grid
    t_cap = grid.resolved_t_max(n - 1)
    nbins = int(math.ceil(t_cap / bin_width))
    edges = np.arange(nbins + 1) * bin_width
    counts = np.zeros((len(_REGIMES), nbins + 1), dtype=np.int64)
    excluded = 0
    total = 0
    near = 0
    trials = cfg.trials_per_n
    for cfg_, n_, start, rows in _scan_args(cfg, n, trials):
        dist = cfg.distribution
        C = np.empty((rows, n))
        for j in range(rows):
            C[j] = sample_coefficients(dist, n, _substream(cfg.seed, n, start + j))
        cnts, susp, _, roots = numeric_count_rows(C, grid, want_locations=True)
        excluded += int(susp.sum())
        for i in np.flatnonzero(~susp):
            for branch, u in roots[i]:
                reg = _BRANCH_REGIME[branch]
                if u >= 1.0:
                    counts[reg, nbins] += 1
                else:
                    t = -math.log1p(-u)
                    b = min(int(t / bin_width), nbins)
                    counts[reg, b] += 1
                # inside branches: |x| = u; outside: |x| = 1/u
                if u > (0.5 if reg in (0, 2) else 2.0 / 3.0):
                    near += 1
                total += 1
    return ZeroHistogram(n, edges, counts, total, near, trials, excluded, cfg.seed)


# --- reproducible output --------------------------------------------------

def config_hash(cfg: ExperimentConfig) -> str:
    payload = {
        "distribution": cfg.distribution.label(),
        "n_values": list(cfg.n_values),
        "trials_per_n": cfg.trials_per_n,
        "seed": cfg.seed,
        "backend": cfg.backend,
        "grid": [cfg.grid.t_max, cfg.grid.points_per_unit_t,
                 cfg.grid.interior_points, cfg.grid.bracket_tol,
                 cfg.grid.suspect_tol, cfg.grid.dip_prefilter],
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


_CSV_HEADER = ("n", "trials", "successes", "p_hat", "ci_low", "ci_high",
               "excluded_suspect", "seed", "code_version", "config_hash")


def write_csv(path: str, estimates, cfg: ExperimentConfig) -> None:
    """One row per estimate, schema _CSV_HEADER; floats as shortest repr so
    the bytes depend only on the values."""
    h = config_hash(cfg)
    with open(path, "w", newline="") as f:
        wr = csv.writer(f, lineterminator="\n")
        wr.writerow(_CSV_HEADER)
        for est in estimates:
            wr.writerow([est.n, est.trials, est.successes, repr(est.p_hat),
                         repr(est.ci_low), repr(est.ci_high),
                         est.excluded_suspect, est.seed, _VERSION, h])


def _plain(v):
    return v.item() if isinstance(v, np.generic) else v


def write_tsv(path: str, pairs, header: tuple[str, str]) -> None:
    """Two-column plot-ready file."""
    with open(path, "w") as f:
        f.write(f"{header[0]}\t{header[1]}\n")
        for a, b in pairs:
            f.write(f"{_plain(a)!r}\t{_plain(b)!r}\n")


def write_json(path: str, payload: dict) -> None:
    with open(path, "w") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")


def summary_payload(cfg: ExperimentConfig, points, fit: ExponentFit | None) -> dict:
    """JSON summary: fit results plus full reproducibility metadata."""
    out = {
        "schema_version": 1,
        "code_version": _VERSION,
        "config_hash": config_hash(cfg),
        "seed": cfg.seed,
        "distribution": cfg.distribution.label(),
        "backend": cfg.backend,
        "trials_per_n": cfg.trials_per_n,
        "ladder": {
            "n_values": list(cfg.n_values),
            "provenance": "package-selected ladder and tolerance bands",
        },
        "points": [
            {"n": n, "p_hat": est.p_hat, "ci_low": est.ci_low,
             "ci_high": est.ci_high, "successes": est.successes,
             "trials": est.trials, "excluded_suspect": est.excluded_suspect}
            for n, est in points
        ],
    }
    if fit is not None:
        out["fit"] = {
            "slope": fit.slope,
            "intercept": fit.intercept,
            "slope_stderr": fit.slope_stderr,
            "points_used": fit.points_used,
            "b_hat": -fit.slope,
            "b_stderr": fit.slope_stderr,
        }
    return out
