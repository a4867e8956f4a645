"""Two independent ways to count the real zeros of one polynomial.

For integer coefficients the Sturm chain over exact rationals gives the
provably correct number of distinct real zeros, on the whole line or in
any half-open interval (a, b].  The numeric scanner works for any real
coefficients by walking the four branches x = +/-u, +/-1/u on a grid
that accumulates points near |x| = 1, where the zeros of large-degree
polynomials pile up; whenever its answer could be wrong it says so via
a suspect flag instead of guessing.
"""

import numpy as np

from randpoly.polycore import CoefficientDistribution, sample_coefficients
from randpoly.rootcount import numeric_count, sturm_count, sturm_count_interval
from randpoly.rng import trial_stream

# (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6: three integer roots
poly = [6, -7, 0, 1]
print("p(x) = 6 - 7x + 0x^2 + x^3")
print("  sturm, whole line:", sturm_count(poly).count)
print("  sturm on (0, 2]  :", sturm_count_interval(poly, 0, 2))
print("  numeric          :", numeric_count(poly).count)

# a double root is invisible to sign changes: p touches zero but never
# crosses.  Lifted off the axis by 1e-12 it has no real zeros at all, yet
# the dip looks exactly like a grazing root — the scanner refuses to
# guess and flags the trial as suspect.
a = 0.512345
near_double = [a * a + 1e-12, -2 * a, 1.0]  # (x - a)^2 + 1e-12
r = numeric_count(near_double)
print()
print(f"p(x) = (x - {a})^2 + 1e-12   (dips to 1e-12, never crosses)")
print(f"  numeric count={r.count}  suspect={r.suspect}")

# the two backends agree on random sign-flip polynomials
dist = CoefficientDistribution.parse("rademacher")
agree = 0
trials = 300
for j in range(trials):
    c = sample_coefficients(dist, 24, trial_stream(7, j))
    exact = sturm_count([int(v) for v in c]).count
    approx = numeric_count(c)
    agree += (exact == approx.count) and not approx.suspect
print()
print(f"random degree-23 sign-flip polynomials: exact == numeric on "
      f"{agree}/{trials} trials")
