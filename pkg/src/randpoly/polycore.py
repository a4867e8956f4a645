"""Polynomials with random coefficients and their two-point correlation kernels.

A polynomial is a dense coefficient vector, lowest degree first.  The value
f(x) = sum a_i x^i of a polynomial with i.i.d. unit-variance coefficients has
standard deviation ``poly_std(n, x)`` and the correlation of the values at two
points is ``poly_corr(n, x, y)``; both admit closed forms that cancel
catastrophically near |x| = 1, so those regions switch to direct summation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Polynomial",
    "CoefficientDistribution",
    "evaluate",
    "poly_std",
    "inv_series_corr",
    "poly_corr",
    "sample_coefficients",
    "reverse_coeffs",
]

# closed forms for poly_std / poly_corr lose ~ -log10(|1-x^2|) digits; below
# this the O(n) direct sum is both exact and affordable
_NEAR_ONE = 1e-6


@dataclass(frozen=True)
class Polynomial:
    """Dense real polynomial, ``coeffs[i]`` multiplying x**i.

    Trailing zero coefficients are stripped on construction, so ``degree`` is
    the index of the last nonzero coefficient (-1 for the zero polynomial).
    Integer coefficients stay Python ints, which the exact zero-counting
    backend relies on.
    """

    coeffs: tuple = field()

    def __init__(self, coeffs):
        seq = list(coeffs)
        if not seq:
            raise ValueError("empty coefficient vector")
        while len(seq) > 1 and seq[-1] == 0:
            seq.pop()
        if len(seq) == 1 and seq[0] == 0:
            object.__setattr__(self, "coeffs", (0,))
        else:
            object.__setattr__(self, "coeffs", tuple(seq))

    @property
    def degree(self) -> int:
        if self.coeffs == (0,):
            return -1
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    @property
    def is_integer(self) -> bool:
        return all(isinstance(c, (int, np.integer)) for c in self.coeffs)

    def __call__(self, x):
        return evaluate(self.coeffs, x)

    def reversed(self) -> "Polynomial":
        """Coefficient-vector reversal: x**d * f(1/x) for degree d."""
        return Polynomial(self.coeffs[::-1])

    def derivative(self) -> "Polynomial":
        if len(self.coeffs) == 1:
            return Polynomial((0,))
        return Polynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))


def _coeffs_of(p) -> tuple:
    return p.coeffs if isinstance(p, Polynomial) else tuple(p)


def evaluate(poly, x):
    """Horner evaluation of ``sum coeffs[i] * x**i``; vectorized over x.

    Overflow is allowed and propagates as inf/nan.
    """
    coeffs = _coeffs_of(poly)
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        acc = np.full_like(x, float(coeffs[-1]))
        for c in coeffs[-2::-1]:
            acc = acc * x + float(c)
    if acc.ndim == 0:
        return float(acc)
    return acc


def _direct_sq_sum(k: int, r2):
    # sum_{i<k} r2**i, one point at a time (only used near |x|=1)
    r2 = np.atleast_1d(np.asarray(r2, dtype=float))
    out = np.empty_like(r2)
    for j, v in enumerate(r2):
        out[j] = np.polynomial.polynomial.polyval(v, np.ones(k))
    return out


def poly_std(k: int, x):
    """Standard deviation of f(x) for k i.i.d. unit-variance coefficients.

    Equals sqrt(|1-x^(2k)| / |1-x^2|) away from |x| = 1 and sqrt(k) at
    x = +-1; the neighborhood |1-x^2| < 1e-6 is computed by direct summation
    because the ratio form cancels there.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    r2 = x * x
    den = np.abs(1.0 - r2)
    out = np.empty_like(x)
    near = den < _NEAR_ONE
    far = ~near
    if far.any():
        with np.errstate(over="ignore", invalid="ignore"):
            num = np.abs(1.0 - r2[far] ** k)
            out[far] = np.sqrt(num / den[far])
    if near.any():
        out[near] = np.sqrt(_direct_sq_sum(k, r2[near]))
    return float(out[0]) if scalar else out


def inv_series_corr(x, y):
    """Reciprocal correlation kernel |xy - 1| / sqrt(|(1-x^2)(1-y^2)|).

    For |x|, |y| < 1 this is 1 over the correlation of the geometric series
    values sum a_i x^i and sum a_i y^i, hence >= 1 there.  Invariant under
    (x, y) -> (-x, -y) and (x, y) -> (1/x, 1/y).  Undefined on |x| = 1 or
    |y| = 1.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dx = np.abs(1.0 - x * x)
    dy = np.abs(1.0 - y * y)
    if np.any(dx == 0.0) or np.any(dy == 0.0):
        raise ValueError("inv_series_corr undefined at |x| = 1 or |y| = 1")
    val = np.abs(x * y - 1.0) / np.sqrt(dx * dy)
    return float(val) if val.ndim == 0 else val


def _geom_sum(n: int, q):
    """sum_{i<n} q**i with a stable branch near q = 1."""
    q = np.atleast_1d(np.asarray(q, dtype=float))
    out = np.empty_like(q)
    near = np.abs(1.0 - q) < _NEAR_ONE
    far = ~near
    if far.any():
        with np.errstate(over="ignore", invalid="ignore"):
            out[far] = (1.0 - q[far] ** n) / (1.0 - q[far])
    if near.any():
        out[near] = _direct_sq_sum(n, q[near])
    return out


def poly_corr(n: int, x, y):
    """Correlation of f(x) and f(y) for n i.i.d. unit-variance coefficients.

    n must be odd (the even-degree family the exponent experiments use).
    Computed as (sum (xy)^i) / (poly_std(n, x) poly_std(n, y)) with stable
    branches, which agrees with the kernel ratio
    inv_series_corr(x**n, y**n) / inv_series_corr(x, y) wherever the latter
    is well-conditioned.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be odd and >= 1")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    scalar = x.ndim == 0 and y.ndim == 0
    x, y = np.atleast_1d(x), np.atleast_1d(y)
    x, y = np.broadcast_arrays(x, y)
    num = _geom_sum(n, x * y)
    val = num / (poly_std(n, x) * poly_std(n, y))
    val = np.clip(val, -1.0, 1.0)
    return float(val[0]) if scalar else val


@dataclass(frozen=True)
class CoefficientDistribution:
    """Law of the i.i.d. coefficients.

    kind: 'normal' | 'rademacher' | 'uniform' | 'cauchy'.  ``uniform`` is
    symmetric on [-half_width, half_width]; no variance normalization is
    applied since zero counts are scale-invariant.  ``mu`` shifts the mean of
    any base kind.
    """

    kind: str = "normal"
    half_width: float = 1.0
    mu: float = 0.0

    _KINDS = ("normal", "rademacher", "uniform", "cauchy")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {self._KINDS}")
        if self.half_width <= 0:
            raise ValueError("half_width must be > 0")

    @property
    def is_integer_valued(self) -> bool:
        return self.kind == "rademacher" and float(self.mu).is_integer()

    @classmethod
    def parse(cls, text: str) -> "CoefficientDistribution":
        """Parse strings like 'rademacher', 'normal:mu=1', 'uniform:hw=0.5,mu=2'."""
        head, _, rest = text.strip().partition(":")
        head = head.lower()
        if head == "gaussian":
            head = "normal"
        kw = {}
        if rest:
            for part in rest.split(","):
                k, _, v = part.partition("=")
                k = k.strip()
                if k in ("hw", "half_width", "half-width"):
                    kw["half_width"] = float(v)
                elif k == "mu":
                    kw["mu"] = float(v)
                else:
                    raise ValueError(f"unknown distribution parameter {k!r}")
        return cls(kind=head, **kw)

    def label(self) -> str:
        s = self.kind
        if self.kind == "uniform" and self.half_width != 1.0:
            s += f":hw={self.half_width:g}"
        if self.mu:
            sep = "," if ":" in s else ":"
            s += f"{sep}mu={self.mu:g}"
        return s


def sample_coefficients(dist: CoefficientDistribution, count: int,
                        stream: np.random.Generator) -> np.ndarray:
    """``count`` i.i.d. draws from ``dist``.

    Rademacher draws are exact integers (int64 +-1, plus integer mu); other
    laws return float64.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    k = dist.kind
    if k == "rademacher":
        vals = stream.integers(0, 2, size=count) * 2 - 1
        if dist.mu:
            if float(dist.mu).is_integer():
                vals = vals + int(dist.mu)
            else:
                vals = vals + dist.mu
        return vals
    if k == "normal":
        vals = stream.standard_normal(count)
    elif k == "uniform":
        vals = stream.uniform(-dist.half_width, dist.half_width, size=count)
    elif k == "cauchy":
        vals = stream.standard_cauchy(count)
    else:  # pragma: no cover - guarded in __post_init__
        raise ValueError(k)
    if dist.mu:
        vals = vals + dist.mu
    return vals


def reverse_coeffs(coeffs):
    """Coefficient-vector reversal; nonzero roots map under x -> 1/x."""
    c = _coeffs_of(coeffs)
    return c[::-1]
