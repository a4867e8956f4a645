"""Stationary Gaussian processes: kernels, spectral densities, exact samplers.

Kernels (unit variance, by tag):

* ``sech``   R(tau) = sech(tau/2) — the scaling limit of a random
  polynomial's normalized value process near |x| = 1 in the t = -log(1-x)
  coordinate.
* ``damped`` R(tau) = sech(tau/2) (2 e^{-|tau|} - e^{-2|tau|}) — the
  short-range component used to perturb ``sech`` without leaving the
  positive-definite cone.
* ``mix``    (1-alpha) sech + alpha damped, alpha in [0, 1].
* ``ou``     R(tau) = e^{-|tau|/2} — admits a closed-form persistence
  probability, the exact benchmark of this package.

Fourier convention: S(omega) = int e^{i omega tau} R(tau) dtau, so
R(0) = (1/2pi) int S = 1.  Under it the sech kernel transforms to
2 pi sech(pi omega).

Sampling is exact in distribution: circulant embedding (FFT of the wrapped
covariance sequence, eigenvalue check, embedding size doubled on failure,
dense Cholesky with 1e-12 jitter as a last resort) or, for ``ou``, the exact
AR(1) recursion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.fft
import scipy.integrate
import scipy.signal

from .rng import trial_stream

__all__ = [
    "KINDS",
    "PathSpec",
    "GridPath",
    "EmbeddingError",
    "covariance",
    "spectral_density",
    "fourier_cos_transform",
    "sample_path",
    "sample_ou",
    "sample_y_alpha",
    "gaussian_path_block",
    "ou_path_block",
]

KINDS = ("sech", "damped", "mix", "ou")

EIG_TOL = -1e-10  # embedding eigenvalues above this are treated as roundoff
CHOL_JITTER = 1e-12


class EmbeddingError(RuntimeError):
    """Raised when neither circulant embedding nor jittered Cholesky works."""


def _sech(x):
    # 1/cosh without overflow for large |x|
    a = np.abs(x)
    e = np.exp(-a)
    return 2.0 * e / (1.0 + e * e)


def covariance(kind: str, tau, alpha: float = 0.0):
    """Covariance R(tau) of the unit-variance kernel ``kind``."""
    tau = np.asarray(tau, dtype=float)
    a = np.abs(tau)
    if kind == "sech":
        out = _sech(0.5 * a)
    elif kind == "damped":
        out = _sech(0.5 * a) * (2.0 * np.exp(-a) - np.exp(-2.0 * a))
    elif kind == "mix":
        if not 0.0 <= alpha <= 1.0:
            raise ValueError("alpha must be in [0, 1]")
        out = (1.0 - alpha) * _sech(0.5 * a) \
            + alpha * _sech(0.5 * a) * (2.0 * np.exp(-a) - np.exp(-2.0 * a))
    elif kind == "ou":
        out = np.exp(-0.5 * a)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return float(out) if out.ndim == 0 else out


def _smoothing_window(v):
    # spectral factor of the damped kernel's modulation (2e^{-|t|} - e^{-2|t|})
    return 12.0 / ((4.0 + v * v) * (1.0 + v * v))


def spectral_density(kind: str, omega, alpha: float = 0.0):
    """S(omega) = int e^{i omega tau} R(tau) dtau; nonnegative for all kinds.

    The ``damped`` density is the convolution (1/2pi)(S_sech * W) with
    W(v) = 12/((4+v^2)(1+v^2)), evaluated by adaptive quadrature -- it exists
    for validation; samplers work in the time domain.
    """
    omega = np.asarray(omega, dtype=float)
    scalar = omega.ndim == 0
    w = np.atleast_1d(omega)
    if kind == "sech":
        out = 2.0 * math.pi * _sech(math.pi * w)
    elif kind == "ou":
        out = 4.0 / (1.0 + 4.0 * w * w)
    elif kind in ("damped", "mix"):
        conv = np.empty_like(w)
        for i, wi in enumerate(w):
            val, _ = scipy.integrate.quad(
                lambda v: 2.0 * math.pi * _sech(math.pi * (wi - v)) * _smoothing_window(v),
                -np.inf, np.inf, epsabs=1e-12, epsrel=1e-10, limit=200)
            conv[i] = val / (2.0 * math.pi)
        if kind == "damped":
            out = conv
        else:
            if not 0.0 <= alpha <= 1.0:
                raise ValueError("alpha must be in [0, 1]")
            out = (1.0 - alpha) * 2.0 * math.pi * _sech(math.pi * w) + alpha * conv
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return float(out[0]) if scalar else out


def fourier_cos_transform(kind: str, omega: float, alpha: float = 0.0) -> float:
    """Numeric S(omega) = 2 int_0^inf R(tau) cos(omega tau) dtau.

    Independent oracle for ``spectral_density`` (oscillatory-weight
    quadrature); used by the validation suite and CLI.
    """
    f = lambda t: covariance(kind, t, alpha)
    if omega == 0.0:
        val, _ = scipy.integrate.quad(f, 0, np.inf, epsabs=1e-12, epsrel=1e-12, limit=400)
    else:
        val, _ = scipy.integrate.quad(f, 0, np.inf, weight="cos", wvar=omega,
                                      epsabs=1e-12, epsrel=1e-12, limit=400)
    return 2.0 * val


@dataclass(frozen=True)
class PathSpec:
    """What to sample: kernel, horizon, grid step, threshold level."""

    kind: str = "sech"
    t_max: float = 16.0
    dt: float = 0.01
    level: float = 0.0
    alpha: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if not (self.dt > 0 and self.t_max >= 0):
            raise ValueError("need dt > 0 and t_max >= 0")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must be in [0, 1]")

    @property
    def npoints(self) -> int:
        return int(math.floor(self.t_max / self.dt + 0.5)) + 1


@dataclass(frozen=True)
class GridPath:
    values: np.ndarray
    dt: float


# --- circulant embedding -------------------------------------------------

_embed_cache: dict = {}
_chol_cache: dict = {}


def _embedding_sqrt(kind: str, alpha: float, dt: float, n: int):
    """(sqrt(eigenvalues), M) for the circulant embedding, or None.

    The wrapped sequence is [r_0..r_{M/2}, r_{M/2-1}..r_1]; its DFT is real.
    Truncation error at the wrap-around point decays like the kernel itself
    (e^{-T}-ish), so a failed eigenvalue check is usually cured by doubling M.
    """
    key = (kind, round(alpha, 12), round(dt, 12), n)
    hit = _embed_cache.get(key)
    if hit is not None:
        return hit
    M0 = 1 << max(3, int(math.ceil(math.log2(4 * n))))
    for M in (M0, 2 * M0, 4 * M0):
        k = np.arange(M // 2 + 1)
        r = covariance(kind, k * dt, alpha)
        c = np.concatenate([r, r[-2:0:-1]])
        lam = scipy.fft.fft(c).real
        if lam.min() >= EIG_TOL:
            out = (np.sqrt(np.clip(lam, 0.0, None)), M)
            _embed_cache[key] = out
            return out
    _embed_cache[key] = None
    return None


def _cholesky_factor(kind: str, alpha: float, dt: float, n: int) -> np.ndarray:
    key = (kind, round(alpha, 12), round(dt, 12), n)
    L = _chol_cache.get(key)
    if L is None:
        tau = dt * np.abs(np.subtract.outer(np.arange(n), np.arange(n)))
        R = covariance(kind, tau, alpha) + CHOL_JITTER * np.eye(n)
        try:
            L = np.linalg.cholesky(R)
        except np.linalg.LinAlgError as exc:
            raise EmbeddingError(
                f"circulant embedding and jittered Cholesky both failed "
                f"(kind={kind}, dt={dt}, n={n})") from exc
        if len(_chol_cache) > 4:
            _chol_cache.clear()
        _chol_cache[key] = L
    return L


def _embedded_pair(spec: PathSpec, stream: np.random.Generator):
    """Two independent exact paths from one stream (Re and Im parts)."""
    n = spec.npoints
    emb = _embedding_sqrt(spec.kind, spec.alpha, spec.dt, n)
    if emb is None:
        L = _cholesky_factor(spec.kind, spec.alpha, spec.dt, n)
        xi = stream.standard_normal((2, n))
        return xi @ L.T
    sqrt_lam, M = emb
    xi = stream.standard_normal((2, M))
    z = xi[0] + 1j * xi[1]
    X = scipy.fft.fft(sqrt_lam * z) / math.sqrt(M)
    return np.stack([X.real[:n], X.imag[:n]])


def sample_path(spec: PathSpec, stream: np.random.Generator) -> GridPath:
    """One stationary Gaussian path on the uniform grid, exact in distribution."""
    if spec.kind == "ou":
        return sample_ou(spec, stream)
    return GridPath(_embedded_pair(spec, stream)[0], spec.dt)


def sample_ou(spec: PathSpec, stream: np.random.Generator) -> GridPath:
    """Exact AR(1) discretization of the e^{-|tau|/2} kernel.

    X_0 ~ N(0,1), X_{t+dt} = e^{-dt/2} X_t + sqrt(1 - e^{-dt}) xi: the grid
    covariance is exact, there is no discretization bias.
    """
    n = spec.npoints
    a = math.exp(-0.5 * spec.dt)
    noise = stream.standard_normal(n)
    noise[1:] *= math.sqrt(1.0 - a * a)
    vals = scipy.signal.lfilter([1.0], [1.0, -a], noise)
    return GridPath(vals, spec.dt)


def sample_y_alpha(alpha: float, spec: PathSpec, stream: np.random.Generator) -> GridPath:
    """Mixture sqrt(1-alpha)*(sech path) + sqrt(alpha)*(damped path).

    The two component paths are independent (drawn sequentially from the one
    stream); alpha = 0 reproduces the plain sech path draw for draw.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must be in [0, 1]")
    base = PathSpec("sech", spec.t_max, spec.dt, spec.level)
    y = _embedded_pair(base, stream)[0]
    if alpha == 0.0:
        return GridPath(y, spec.dt)
    zspec = PathSpec("damped", spec.t_max, spec.dt, spec.level)
    z = _embedded_pair(zspec, stream)[0]
    return GridPath(math.sqrt(1.0 - alpha) * y + math.sqrt(alpha) * z, spec.dt)


# --- batch samplers (the Monte Carlo hot path) ---------------------------

def gaussian_path_block(spec: PathSpec, seed: int, start_row: int,
                        rows: int) -> np.ndarray:
    """(2*rows, npoints) matrix of independent paths for FFT-backed kernels.

    Row pair (2j, 2j+1) comes from stream (seed, start_row + j); chunking
    over ``start_row`` cannot change any path.  For kind='ou' use
    ``ou_path_block`` (one path per stream).
    """
    n = spec.npoints
    emb = _embedding_sqrt(spec.kind, spec.alpha, spec.dt, n)
    if emb is None:
        L = _cholesky_factor(spec.kind, spec.alpha, spec.dt, n)
        out = np.empty((2 * rows, n))
        for j in range(rows):
            xi = trial_stream(seed, start_row + j).standard_normal((2, n))
            out[2 * j: 2 * j + 2] = xi @ L.T
        return out
    sqrt_lam, M = emb
    buf = np.empty((rows, 2, M))
    for j in range(rows):
        trial_stream(seed, start_row + j).standard_normal(out=buf[j])
    z = buf[:, 0, :] + 1j * buf[:, 1, :]
    z *= sqrt_lam
    X = scipy.fft.fft(z, axis=1)
    X /= math.sqrt(M)
    out = np.empty((2 * rows, n))
    out[0::2] = X.real[:, :n]
    out[1::2] = X.imag[:, :n]
    return out


def ou_path_block(spec: PathSpec, seed: int, start_row: int, rows: int) -> np.ndarray:
    """(rows, npoints) exact AR(1) paths; row j from stream (seed, start_row+j)."""
    n = spec.npoints
    a = math.exp(-0.5 * spec.dt)
    noise = np.empty((rows, n))
    for j in range(rows):
        trial_stream(seed, start_row + j).standard_normal(out=noise[j])
    noise[:, 1:] *= math.sqrt(1.0 - a * a)
    return scipy.signal.lfilter([1.0], [1.0, -a], noise, axis=1)
