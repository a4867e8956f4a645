"""Count distinct real zeros of polynomials, exactly or numerically.

Two backends:

* ``sturm_count`` / ``sturm_count_interval`` — exact integer arithmetic.  A
  subresultant polynomial remainder sequence keeps coefficient growth
  polynomial (naive Sturm remainders explode exponentially), with the sign
  flips introduced by the subresultant normalization tracked alongside so the
  classical sign-variation count still applies.

* ``numeric_count`` / ``has_no_real_zero`` — floating point.  The real line
  is swept through four maps of [0, 1) (x, -x, 1/x, -1/x, realized by
  coefficient reversal and alternation so every evaluation happens at
  |u| <= 1), on a grid that is logarithmic in t = -log(1-u) near u = 1 where
  the zeros of random polynomials concentrate.  Sign changes of f/sigma are
  counted; same-sign cells where |f|/sigma dips low are refined through the
  derivative to find hidden root pairs, and unresolvable dips are flagged
  suspect rather than guessed.

Batch variants evaluate many coefficient rows against one node matrix, which
is where the Monte Carlo harness spends its time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .polycore import Polynomial, poly_std

try:  # pure-Python ints work everywhere; gmpy2 is a ~3x faster drop-in
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - exercised via forced-fallback test
    _mpz = int

__all__ = [
    "ZeroCountResult",
    "GridSpec",
    "sturm_count",
    "sturm_count_interval",
    "numeric_count",
    "has_no_real_zero",
    "numeric_count_rows",
    "no_real_zero_rows",
]


@dataclass(frozen=True)
class ZeroCountResult:
    """Outcome of a zero count.

    ``certified`` is True only for the exact backend; ``suspect_intervals``
    lists (lo, hi) real intervals where the numeric backend saw |f|/sigma dip
    below tolerance without resolving the local root structure.
    """

    count: int
    certified: bool
    suspect_intervals: tuple = ()

    @property
    def suspect(self) -> bool:
        return len(self.suspect_intervals) > 0


@dataclass(frozen=True)
class GridSpec:
    """Numeric-backend grid parameters.

    ``t_max`` is the depth of the logarithmic grid u = 1 - exp(-t); None
    means log(degree) + 6, deep enough that the surviving mass beyond it is
    negligible for the degrees we target.  ``dip_prefilter`` is the |f|/sigma
    level below which a same-sign cell is inspected for a hidden root pair;
    ``suspect_tol`` the level below which an unresolved dip is flagged.
    """

    t_max: float | None = None
    points_per_unit_t: int = 64
    interior_points: int = 256
    bracket_tol: float = 1e-12
    suspect_tol: float = 1e-8
    dip_prefilter: float = 0.05

    def __post_init__(self):
        if self.t_max is not None and self.t_max <= 0:
            raise ValueError("t_max must be > 0")
        if self.points_per_unit_t < 2 or self.interior_points < 2:
            raise ValueError("grid point counts must be >= 2")

    def resolved_t_max(self, degree: int) -> float:
        if self.t_max is not None:
            return self.t_max
        return math.log(max(degree, 2)) + 6.0


# --------------------------------------------------------------------------
# exact backend
# --------------------------------------------------------------------------

def _int_coeffs(poly) -> list:
    coeffs = poly.coeffs if isinstance(poly, Polynomial) else tuple(poly)
    out = []
    for c in coeffs:
        if isinstance(c, (int, np.integer)):
            out.append(int(c))
        elif isinstance(c, float) and c.is_integer():
            out.append(int(c))
        else:
            raise ValueError("exact backend requires integer coefficients")
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _prem(A: list, B: list, lb) -> list:
    """Pseudo-remainder of lb^(dA-dB+1) * A by B, low-to-high coefficients."""
    dB = len(B) - 1
    R = list(A)
    e = len(A) - 1 - dB + 1
    steps = 0
    while R and len(R) - 1 >= dB:
        c = R[-1]
        sh = len(R) - 1 - dB
        R = [lb * a for a in R]
        for j in range(dB + 1):
            R[sh + j] -= c * B[j]
        R.pop()
        while R and R[-1] == 0:
            R.pop()
        steps += 1
    if R and e > steps:
        f = lb ** (e - steps)
        R = [f * a for a in R]
    return R


def _subresultant_chain(p: list) -> list:
    """Signed remainder chain [(coeffs, sigma), ...] for Sturm counting.

    Subresultant elements differ from the true Sturm remainders by known
    positive/negative factors; sigma carries the accumulated sign so that
    sigma * sign(S(x)) is the sign the classical sequence would have.
    """
    d = len(p) - 1
    dp = [i * c for i, c in enumerate(p) if i]
    while dp and dp[-1] == 0:
        dp.pop()
    chain = [(p, 1)]
    if not dp:
        return chain
    chain.append((dp, 1))
    A, B = p, dp
    sA = sB = 1
    g = h = _mpz(1)
    while True:
        delta = (len(A) - 1) - (len(B) - 1)
        R = _prem(A, B, B[-1])
        if not R:
            break
        divisor = g * h ** delta
        S = [a // divisor for a in R]
        # sign of the normalization factor relating S to the Sturm remainder:
        # -sign(divisor) * sign(lc(B))^(delta+1), chained through sigma
        sgn_div = 1 if divisor > 0 else -1
        sgn_lc = 1 if B[-1] > 0 else (1 if (delta + 1) % 2 == 0 else -1)
        sS = -sA * sgn_div * sgn_lc
        chain.append((S, sS))
        g = B[-1]
        if delta >= 1:
            h = g ** delta if delta == 1 else g ** delta // h ** (delta - 1)
        A, B, sA, sB = B, S, sB, sS
    return chain


def _variations(signs) -> int:
    v, prev = 0, 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            v += 1
        prev = s
    return v


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _chain_variations_at_inf(chain):
    neg = [sig * _sign(c[-1]) * (-1 if (len(c) - 1) % 2 else 1) for c, sig in chain]
    pos = [sig * _sign(c[-1]) for c, sig in chain]
    return _variations(neg), _variations(pos)


def _eval_sign_scaled(coeffs: list, num, den) -> int:
    """Sign of sum coeffs[i] (num/den)^i for den > 0, by scaled integer Horner."""
    acc = _mpz(coeffs[-1])
    dpow = _mpz(1)
    for c in reversed(coeffs[:-1]):
        dpow *= den
        acc = acc * num + c * dpow
    return _sign(acc)


def _squarefree_part(p: list) -> list:
    """p / gcd(p, p'), computed exactly over the rationals then re-integered."""
    chain = _subresultant_chain(p)
    g = chain[-1][0]
    if len(g) - 1 < 1:
        return p
    fg = [Fraction(int(c)) for c in g]
    fp = [Fraction(int(c)) for c in p]
    # long division fp / fg (exact: g divides p)
    q = [Fraction(0)] * (len(fp) - len(fg) + 1)
    r = list(fp)
    for k in range(len(q) - 1, -1, -1):
        coef = r[k + len(fg) - 1] / fg[-1]
        q[k] = coef
        for j, gc in enumerate(fg):
            r[k + j] -= coef * gc
    if any(x != 0 for x in r):  # pragma: no cover - would mean a chain bug
        raise ArithmeticError("gcd does not divide polynomial")
    lcm = 1
    for c in q:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    out = [int(c * lcm) for c in q]
    content = 0
    for c in out:
        content = math.gcd(content, abs(c))
    return [c // content for c in out]


def _prepared_chain(poly):
    """(chain, zero_root) for the square-free part with x=0 roots split off."""
    p = _int_coeffs(poly)
    if p == [0]:
        raise ValueError("zero polynomial has no zero count")
    zero_root = 0
    k = 0
    while p[k] == 0:
        k += 1
    if k:
        p = p[k:]
        zero_root = 1
    if len(p) - 1 < 1:
        return None, zero_root
    p = [_mpz(c) for c in p]
    chain = _subresultant_chain(p)
    if len(chain[-1][0]) - 1 >= 1:
        p = [_mpz(c) for c in _squarefree_part([int(c) for c in p])]
        chain = _subresultant_chain(p)
    return chain, zero_root


def sturm_count(poly) -> ZeroCountResult:
    """Exact number of distinct real zeros, over the whole real line."""
    chain, zero_root = _prepared_chain(poly)
    if chain is None:
        return ZeroCountResult(zero_root, True)
    vneg, vpos = _chain_variations_at_inf(chain)
    return ZeroCountResult(vneg - vpos + zero_root, True)


def _count_leq(chain, x: Fraction) -> int:
    """Zeros of the (square-free) chain polynomial in (-inf, x].

    Evaluates the chain just right of x: when the polynomial itself vanishes
    at x its right-limit sign is the sign of the derivative there, and zeros
    of intermediate chain elements never affect the variation count.
    """
    num, den = _mpz(x.numerator), _mpz(x.denominator)
    signs = [sig * _eval_sign_scaled(c, num, den) for c, sig in chain]
    if signs[0] == 0:
        # right-limit sign of a square-free polynomial at its own root is the
        # derivative's sign there (and the derivative cannot vanish too)
        signs[0] = signs[1]
    vneg, _ = _chain_variations_at_inf(chain)
    return vneg - _variations(signs)


def sturm_count_interval(poly, a, b) -> int:
    """Exact count of distinct real zeros in the half-open interval (a, b].

    Endpoints may be ints, floats, or Fractions; endpoint roots are handled
    exactly (a root at b is included, a root at a is not), so no perturbation
    is needed.
    """
    fa, fb = Fraction(a), Fraction(b)
    if not fa < fb:
        raise ValueError("need a < b")
    chain, zero_root = _prepared_chain(poly)
    inside_zero = zero_root and fa < 0 <= fb
    if chain is None:
        return int(inside_zero)
    return _count_leq(chain, fb) - _count_leq(chain, fa) + int(inside_zero)


# --------------------------------------------------------------------------
# numeric backend
# --------------------------------------------------------------------------
#
# Branch layout: the real line is covered by four copies of the unit
# coordinate u in [0, 1] --
#   'd'  x = u          (direct coefficients)
#   'r'  x = 1/u        (reversed coefficients; u < 1 means x > 1)
#   'n'  x = -u         (sign-alternated coefficients)
#   'nr' x = -1/u       (alternated then reversed)
# so every polynomial evaluation happens at |u| <= 1 and never overflows.
# u = 1 is the shared node x = +-1, evaluated exactly as the coefficient sum;
# u = 0 on the reversed branches is the sign at infinity (leading coefficient).

_BRANCH_SIGN = {"d": 1.0, "r": 1.0, "n": -1.0, "nr": -1.0}

_node_cache: dict = {}
_pow_cache: dict = {}


def _unit_nodes(grid: GridSpec, degree: int) -> np.ndarray:
    """Ascending sweep nodes in [0, 1): uniform interior plus log-in-t tail."""
    tmax = grid.resolved_t_max(degree)
    key = (round(tmax, 12), grid.points_per_unit_t, grid.interior_points)
    u = _node_cache.get(key)
    if u is None:
        nt = int(math.ceil(tmax * grid.points_per_unit_t))
        t = np.arange(1, nt + 1) / grid.points_per_unit_t
        log_part = 1.0 - np.exp(-t)
        interior = np.arange(grid.interior_points) / grid.interior_points
        u = np.unique(np.concatenate([interior, log_part]))
        _node_cache[key] = u
    return u


def _power_matrix(u: np.ndarray, n: int) -> np.ndarray:
    key = (id(u), len(u), n)
    P = _pow_cache.get(key)
    if P is None:
        P = np.power.outer(u, np.arange(n)).T.copy()  # (n, K)
        if len(_pow_cache) > 8:
            _pow_cache.clear()
        _pow_cache[key] = P
    return P


def _alternate(C: np.ndarray) -> np.ndarray:
    alt = np.ones(C.shape[1])
    alt[1::2] = -1.0
    return C * alt


def _branch_rows(C: np.ndarray, branch: str) -> np.ndarray:
    if branch == "d":
        return C
    if branch == "r":
        return C[:, ::-1]
    if branch == "n":
        return _alternate(C)
    return _alternate(C)[:, ::-1]


def _deriv_rows(B: np.ndarray) -> np.ndarray:
    n = B.shape[1]
    if n == 1:
        return np.zeros((B.shape[0], 1))
    return B[:, 1:] * np.arange(1, n)


def _horner_at(rows: np.ndarray, x: np.ndarray) -> np.ndarray:
    """rows (m, n) evaluated at per-row points x (m,)."""
    acc = rows[:, -1].copy()
    for j in range(rows.shape[1] - 2, -1, -1):
        acc = acc * x + rows[:, j]
    return acc


def _axis_crossings(sign_mat: np.ndarray) -> np.ndarray:
    """Sign changes per row, when no entry is zero."""
    return ((sign_mat[:, 1:] * sign_mat[:, :-1]) < 0).sum(axis=1)


def _variations_row(vals) -> int:
    v, prev = 0, 0.0
    for x in vals:
        if x == 0.0:
            continue
        s = 1.0 if x > 0 else -1.0
        if prev and s != prev:
            v += 1
        prev = s
    return v


class _DipCell:
    __slots__ = ("trial", "branch", "lo", "hi")

    def __init__(self, trial, branch, lo, hi):
        self.trial = trial
        self.branch = branch
        self.lo = lo
        self.hi = hi


def _refine_dip(poly_row: np.ndarray, dpoly_row: np.ndarray, lo: float, hi: float,
                sigma_fn, suspect_tol: float):
    """Inspect a same-sign cell for hidden roots via the derivative.

    Returns (added_roots, suspect_interval_or_None, crossing_subcells) where
    crossing_subcells are (a, b) brackets for newly found roots.
    """
    sub = np.linspace(lo, hi, 9)
    dvals = np.polynomial.polynomial.polyval(sub, dpoly_row)
    extrema = []
    for j in range(8):
        a, b, da, db = sub[j], sub[j + 1], dvals[j], dvals[j + 1]
        if da == 0.0:
            extrema.append(a)
            continue
        if da * db < 0:
            for _ in range(60):
                m = 0.5 * (a + b)
                dm = np.polynomial.polynomial.polyval(m, dpoly_row)
                if dm == 0.0:
                    break
                if da * dm < 0:
                    b, db = m, dm
                else:
                    a, da = m, dm
            extrema.append(0.5 * (a + b))
    if not extrema:
        return 0, None, []
    pts = np.concatenate([[lo], np.sort(extrema), [hi]])
    vals = np.polynomial.polynomial.polyval(pts, poly_row)
    added = _variations_row(vals)
    brackets = [(pts[j], pts[j + 1]) for j in range(len(pts) - 1)
                if vals[j] * vals[j + 1] < 0]
    suspect = None
    svals = vals / sigma_fn(pts)
    for j, e in enumerate(pts[1:-1], start=1):
        near = abs(svals[j]) < suspect_tol
        crossed = (vals[j - 1] * vals[j] < 0) or (vals[j] * vals[j + 1] < 0)
        if near and not crossed:
            suspect = (pts[j - 1], pts[j + 1])
    return added, suspect, brackets


def _branch_to_x(branch: str, u_lo: float, u_hi: float):
    """Map a branch-coordinate interval to a real-axis interval (lo < hi)."""
    if branch == "d":
        return (u_lo, u_hi)
    if branch == "r":
        return (1.0 / u_hi if u_hi > 0 else np.inf, 1.0 / u_lo if u_lo > 0 else np.inf)
    if branch == "n":
        return (-u_hi, -u_lo)
    return (-1.0 / u_lo if u_lo > 0 else -np.inf, -1.0 / u_hi if u_hi > 0 else -np.inf)


def _bisect_bracket(poly_row: np.ndarray, a: float, b: float, tol_t: float) -> float:
    """Refine a sign-change bracket to tol in t = -log(1-u); returns root u."""
    fa = np.polynomial.polynomial.polyval(a, poly_row)
    while True:
        ta = -math.log1p(-a) if a < 1 else math.inf
        tb = -math.log1p(-b) if b < 1 else math.inf
        m = 0.5 * (a + b)
        # the t-space gap of a 1-ulp cell below u=1 stays large, so the
        # midpoint stagnation check is the one that must terminate there
        if tb - ta <= tol_t or m <= a or m >= b:
            return m
        fm = np.polynomial.polynomial.polyval(m, poly_row)
        if fm == 0.0:
            return m
        if fa * fm < 0:
            b = m
        else:
            a, fa = m, fm


def numeric_count_rows(C: np.ndarray, grid: GridSpec | None = None,
                       want_locations: bool = False):
    """Count distinct real zeros for each coefficient row of C.

    Returns (counts, suspect, details) -- and with ``want_locations`` a fourth
    element, a per-trial list of (branch, u_root) pairs (u the branch
    coordinate; u = 1.0 encodes a root at exactly x = +-1).
    ``details[i]`` is a tuple of real-axis suspect intervals for trial i.
    """
    if grid is None:
        grid = GridSpec()
    C = np.ascontiguousarray(np.asarray(C, dtype=float))
    m, n = C.shape
    if n < 2:
        counts = np.zeros(m, dtype=np.int64)
        out = (counts, np.zeros(m, bool), [()] * m)
        return out + ([[] for _ in range(m)],) if want_locations else out

    u = _unit_nodes(grid, n - 1)
    P = _power_matrix(u, n)
    sigma_u = poly_std(n, u)
    sqrt_n = math.sqrt(n)
    prefilter = grid.dip_prefilter

    counts = np.zeros(m, dtype=np.int64)
    suspect_details: list = [None] * m
    roots: list = [[] for _ in range(m)] if want_locations else None
    zero_trials = set()

    def sigma_fn(pts):
        return poly_std(n, np.asarray(pts))

    # axes: positive = branches (d, r), negative = (n, nr)
    for axis_branches in (("d", "r"), ("n", "nr")):
        b_in, b_out = axis_branches
        B_in = _branch_rows(C, b_in)
        B_out = _branch_rows(C, b_out)
        V_in = B_in @ P
        V_out = B_out @ P
        end_val = B_in.sum(axis=1)  # f(+-1), shared by both branches
        # full-axis sweep: 0 -> 1 on inner branch, then 1 -> infinity via the
        # outer branch traversed from u=1 down to u=0
        sweep = np.concatenate(
            [V_in, end_val[:, None], V_out[:, ::-1]], axis=1)
        signs = np.sign(sweep).astype(np.int8)
        has_zero = (signs == 0).any(axis=1)
        ok = ~has_zero
        counts[ok] += _axis_crossings(signs[ok])
        zero_trials.update(np.flatnonzero(has_zero).tolist())

        # dip candidates per branch: same-sign cell, low normalized value, and
        # a derivative sign change (an extremum) inside -- all three required,
        # or near +-1 nearly every cell would qualify
        for branch, V, B in ((b_in, V_in, B_in), (b_out, V_out, B_out)):
            Ve = np.concatenate([V, end_val[:, None]], axis=1)
            Ue = np.abs(Ve) / np.concatenate([sigma_u, [sqrt_n]])
            prod = Ve[:, 1:] * Ve[:, :-1]
            low = np.minimum(Ue[:, 1:], Ue[:, :-1]) < prefilter
            dB = _deriv_rows(B)
            dV = dB @ P[: dB.shape[1]]
            dVe = np.concatenate([dV, dB.sum(axis=1)[:, None]], axis=1)
            dcross = dVe[:, 1:] * dVe[:, :-1] <= 0
            cand = (prod > 0) & low & dcross
            ti, ci = np.nonzero(cand)
            u_ext = np.concatenate([u, [1.0]])
            for trial, cell in zip(ti.tolist(), ci.tolist()):
                if trial in zero_trials:
                    continue
                added, susp, brackets = _refine_dip(
                    B[trial], dB[trial], u_ext[cell], u_ext[cell + 1],
                    sigma_fn, grid.suspect_tol)
                counts[trial] += added
                if susp is not None:
                    iv = _branch_to_x(branch, *susp)
                    prev = suspect_details[trial] or ()
                    suspect_details[trial] = prev + (tuple(sorted(iv)),)
                if want_locations:
                    for (a, b) in brackets:
                        roots[trial].append(
                            (branch, _bisect_bracket(B[trial], a, b, grid.bracket_tol)))

        if want_locations:
            # sign-change brackets on the regular grid
            for branch, V, B in ((b_in, V_in, B_in), (b_out, V_out, B_out)):
                Ve = np.concatenate([V, end_val[:, None]], axis=1)
                u_ext = np.concatenate([u, [1.0]])
                cross = Ve[:, 1:] * Ve[:, :-1] < 0
                ti, ci = np.nonzero(cross)
                for trial, cell in zip(ti.tolist(), ci.tolist()):
                    if trial in zero_trials:
                        continue
                    roots[trial].append(
                        (branch, _bisect_bracket(B[trial], u_ext[cell], u_ext[cell + 1],
                                                 grid.bracket_tol)))

    # slow path: trials with an exact zero at some node (integer laws hitting
    # x = +-1, typically); redo both axes with zero-aware scanning
    for trial in sorted(zero_trials):
        counts[trial] = 0
        suspect_details[trial] = None
        if want_locations:
            roots[trial] = []
        row = C[trial:trial + 1]
        total = 0
        for axis_branches in (("d", "r"), ("n", "nr")):
            B_in = _branch_rows(row, axis_branches[0])[0]
            B_out = _branch_rows(row, axis_branches[1])[0]
            v_in = P.T @ B_in
            v_out = P.T @ B_out
            end_val = B_in.sum()
            sweep = np.concatenate([v_in, [end_val], v_out[::-1]])
            total += _variations_row(sweep)
            k = len(v_in)
            # zero nodes: crossings are already in the variation count; a zero
            # flanked by equal signs is a touch root and counts once extra
            zpos = np.flatnonzero(sweep == 0.0)
            for z in zpos:
                left = next((sweep[j] for j in range(z - 1, -1, -1) if sweep[j] != 0.0), 0.0)
                right = next((sweep[j] for j in range(z + 1, len(sweep)) if sweep[j] != 0.0), 0.0)
                if left * right > 0:
                    total += 1
                if want_locations and 0 < z < len(sweep) - 1 and left * right != 0:
                    # a genuine root at the node itself (slot 0 is the origin,
                    # handled below; the last slot is u=0 on the outer branch,
                    # i.e. a vanishing leading coefficient, not a root)
                    if z < k:
                        roots[trial].append((axis_branches[0], float(u[z])))
                    elif z == k:
                        roots[trial].append((axis_branches[0], 1.0))
                    else:
                        roots[trial].append((axis_branches[1], float(u[2 * k - z])))
            # adjacent zero nodes would be ambiguous; flag rather than guess
            if len(zpos) > 1 and (np.diff(zpos) == 1).any():
                suspect_details[trial] = ((np.nan, np.nan),)
            if want_locations:
                # strict sign-change cells, per branch with the x=+-1 endpoint
                u_ext = np.concatenate([u, [1.0]])
                for branch, B1, v in ((axis_branches[0], B_in, np.append(v_in, end_val)),
                                      (axis_branches[1], B_out, np.append(v_out, end_val))):
                    cells = np.flatnonzero(v[1:] * v[:-1] < 0)
                    for cell in cells:
                        roots[trial].append(
                            (branch, _bisect_bracket(B1, u_ext[cell], u_ext[cell + 1],
                                                     grid.bracket_tol)))
        if C[trial, 0] == 0.0:
            # root at the origin: the u=0 node is an endpoint of both axis
            # sweeps, so the variation scans never see it -- add it once
            total += 1
            if want_locations:
                roots[trial].append(("d", 0.0))
        counts[trial] = total
        if want_locations:
            # drop duplicate +-1 node roots recorded from both sweeps
            seen = set()
            uniq = []
            for item in roots[trial]:
                if item not in seen:
                    seen.add(item)
                    uniq.append(item)
            roots[trial] = uniq

    details = [d if d is not None else () for d in suspect_details]
    suspect = np.array([len(d) > 0 for d in details], dtype=bool)
    if want_locations:
        return counts, suspect, details, roots
    return counts, suspect, details


def no_real_zero_rows(C: np.ndarray, grid: GridSpec | None = None,
                      coarse_stride: int = 6):
    """Vectorized predicate: which rows have no real zero?

    Returns (nozero, suspect) boolean arrays.  A cheap coarse sweep first
    discards rows with a certain sign change (any sign change on a subgrid
    proves a root); only survivors pay for the full count.  ``suspect`` marks
    rows whose classification the numeric backend could not certify -- the
    caller decides whether to escalate them to the exact backend or exclude.
    """
    if grid is None:
        grid = GridSpec()
    C = np.ascontiguousarray(np.asarray(C, dtype=float))
    m, n = C.shape
    nozero = np.zeros(m, dtype=bool)
    suspect = np.zeros(m, dtype=bool)
    if n < 2:
        nozero[:] = True  # nonzero constants
        return nozero, suspect
    if (n - 1) % 2 == 1:
        return nozero, suspect  # odd degree always has a real zero

    u = _unit_nodes(grid, n - 1)
    P = _power_matrix(u, n)
    idx = np.arange(0, len(u), coarse_stride)
    Pc = P[:, idx]

    undecided = np.ones(m, dtype=bool)
    for axis_branches in (("d", "r"), ("n", "nr")):
        rows_idx = np.flatnonzero(undecided)
        if rows_idx.size == 0:
            break
        sub = C[rows_idx]
        B_in = _branch_rows(sub, axis_branches[0])
        B_out = _branch_rows(sub, axis_branches[1])
        sweep = np.concatenate(
            [B_in @ Pc, B_in.sum(axis=1)[:, None], (B_out @ Pc)[:, ::-1]], axis=1)
        signs = np.sign(sweep).astype(np.int8)
        certain_root = ((signs[:, 1:] * signs[:, :-1]) < 0).any(axis=1)
        # zero entries stay undecided (handled by the full pass)
        certain_root &= ~(signs == 0).any(axis=1)
        undecided[rows_idx[certain_root]] = False

    surv = np.flatnonzero(undecided)
    if surv.size:
        counts, susp, _ = numeric_count_rows(C[surv], grid)
        nozero[surv] = (counts == 0) & ~susp
        suspect[surv] = (counts == 0) & susp
    return nozero, suspect


def numeric_count(poly, grid: GridSpec | None = None) -> ZeroCountResult:
    """Numeric count of distinct real zeros (certified=False).

    Zeros at x = 0 are split off exactly first; the rest of the line is swept
    as described in the module docstring.
    """
    coeffs = poly.coeffs if isinstance(poly, Polynomial) else tuple(poly)
    c = np.asarray(coeffs, dtype=float)
    nz = np.flatnonzero(c)
    if nz.size == 0:
        raise ValueError("zero polynomial has no zero count")
    zero_root = 1 if nz[0] > 0 else 0
    c = c[nz[0]: nz[-1] + 1]
    if len(c) == 1:
        return ZeroCountResult(zero_root, False)
    counts, _, details = numeric_count_rows(c[None, :], grid)
    return ZeroCountResult(int(counts[0]) + zero_root, False, tuple(details[0]))


def has_no_real_zero(poly, grid: GridSpec | None = None) -> bool:
    """True iff the numeric count is zero with nothing flagged suspect.

    Odd-degree polynomials short-circuit to False.
    """
    coeffs = poly.coeffs if isinstance(poly, Polynomial) else tuple(poly)
    c = np.asarray(coeffs, dtype=float)
    nz = np.flatnonzero(c)
    if nz.size == 0:
        return False
    if nz[0] > 0:
        return False  # root at x = 0
    c = c[: nz[-1] + 1]
    if len(c) == 1:
        return True
    if (len(c) - 1) % 2 == 1:
        return False
    res = numeric_count_rows(c[None, :], grid)
    return bool(res[0][0] == 0 and not res[1][0])
