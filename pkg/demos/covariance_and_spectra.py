"""Correlation structure of polynomial values and the limiting kernels.

The values of a random polynomial with iid coefficients at two points
x, y in (-1, 1) are correlated; as the degree grows the correlation
approaches a universal kernel that depends only on the boundary-layer
coordinates t = -log(1 - x), s = -log(1 - y).  In those coordinates the
limit is sech((t - s)/2) — a stationary Gaussian process.  This script
shows the convergence and the spectral side of the kernel.
"""

import numpy as np

from randpoly.gp import covariance, fourier_cos_transform, spectral_density
from randpoly.polycore import poly_corr

t_vals = np.array([0.0, 0.5, 1.0, 2.0, 4.0])
s = 1.0

print("finite-degree correlation  ->  sech((t-s)/2)")
print(f"{'t':>5} {'n=11':>10} {'n=101':>10} {'n=1001':>10} {'limit':>10}")
for t in t_vals:
    x, y = 1.0 - np.exp(-t), 1.0 - np.exp(-s)
    row = [poly_corr(n, x, y) for n in (11, 101, 1001)]
    lim = covariance("sech", t - s)
    print(f"{t:5.1f} {row[0]:10.6f} {row[1]:10.6f} {row[2]:10.6f} {lim:10.6f}")

print()
print("the sech kernel dominates the exp(-|tau|/2) kernel pointwise,")
print("so its paths stay positive at least as easily:")
tau = np.linspace(0.0, 10.0, 6)
for a, b in zip(covariance("sech", tau), covariance("ou", tau)):
    print(f"  sech {a:8.5f}  >=  ou {b:8.5f}")

print()
print("spectral check: numerical cosine transform of sech(tau/2)")
print("matches the closed form 2 pi sech(pi omega)")
for w in (0.0, 0.5, 1.0, 2.0):
    got = fourier_cos_transform("sech", w)
    want = spectral_density("sech", w)
    print(f"  omega={w:3.1f}  transform={got:12.8f}  closed={want:12.8f}  "
          f"rel={abs(got - want) / want:.2e}")
