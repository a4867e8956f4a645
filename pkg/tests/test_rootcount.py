import math
from fractions import Fraction

import numpy as np
import pytest

from randpoly.polycore import CoefficientDistribution, Polynomial, sample_coefficients
from randpoly.rng import trial_stream
from randpoly.rootcount import (GridSpec, has_no_real_zero, no_real_zero_rows,
                                numeric_count, numeric_count_rows, sturm_count,
                                sturm_count_interval)


class TestSturmCount:
    def test_no_real_roots(self):
        assert sturm_count((1, 0, 1)).count == 0  # x^2 + 1

    def test_three_simple_roots(self):
        assert sturm_count((0, -1, 0, 1)).count == 3  # x^3 - x

    def test_double_root_counted_once(self):
        assert sturm_count((1, -2, 1)).count == 1  # (x - 1)^2

    def test_certified(self):
        r = sturm_count((1, 0, 1))
        assert r.certified and r.suspect_intervals == ()

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            sturm_count((0,))

    def test_scaling_invariance(self):
        rng = np.random.default_rng(31)
        for _ in range(50):
            c = [int(v) for v in rng.integers(-9, 10, size=rng.integers(2, 14))]
            if not any(c):
                c[0] = 1
            base = sturm_count(c).count
            for s in (2, -1, 7):
                assert sturm_count([s * v for v in c]).count == base

    def test_negation_invariance(self):
        # x -> -x preserves the number of real roots
        rng = np.random.default_rng(37)
        for _ in range(50):
            c = [int(v) for v in rng.integers(-9, 10, size=rng.integers(2, 14))]
            if not any(c):
                c[0] = 1
            flipped = [v if i % 2 == 0 else -v for i, v in enumerate(c)]
            assert sturm_count(c).count == sturm_count(flipped).count

    def test_reversal_preserves_nonzero_roots(self):
        rng = np.random.default_rng(41)
        for _ in range(50):
            c = [int(v) for v in rng.integers(-9, 10, size=rng.integers(2, 14))]
            if c[0] == 0:
                c[0] = 1  # no root at zero, so all roots are nonzero or none
            if c[-1] == 0:
                c[-1] = 1
            assert sturm_count(c).count == sturm_count(c[::-1]).count


class TestSturmInterval:
    def test_two_of_three_inside(self):
        assert sturm_count_interval((0, -1, 0, 1), Fraction(-1, 2), Fraction(3, 2)) == 2

    def test_empty_for_positive_poly(self):
        assert sturm_count_interval((1, 0, 1), -100, 100) == 0

    def test_half_open_convention(self):
        # (a, b] includes the right endpoint
        assert sturm_count_interval((0, 1), 0, 1) == 0  # root at 0 excluded
        assert sturm_count_interval((0, 1), -1, 0) == 1  # root at 0 included

    def test_partition_additivity(self):
        rng = np.random.default_rng(43)
        for _ in range(100):
            deg = int(rng.integers(2, 13))
            c = [int(v) for v in rng.integers(-20, 21, size=deg + 1)]
            if c[-1] == 0:
                c[-1] = 1
            cuts = sorted(set([Fraction(-10)]
                              + [Fraction(int(v), 7) for v in rng.integers(-69, 70, size=5)]
                              + [Fraction(10)]))
            total = sturm_count_interval(c, Fraction(-10), Fraction(10))
            parts = sum(sturm_count_interval(c, a, b)
                        for a, b in zip(cuts, cuts[1:]))
            assert parts == total


class TestNumericCount:
    def test_positive_quadratic(self):
        assert numeric_count((1.0, 1.0, 1.0)).count == 0

    def test_two_roots(self):
        assert numeric_count((1.0, -3.0, 1.0)).count == 2

    def test_not_certified(self):
        assert not numeric_count((1.0, 1.0, 1.0)).certified

    def test_root_at_zero(self):
        assert numeric_count((0.0, 0.0, 1.0, 1.0)).count == 2  # x^2(1 + x)

    def test_root_at_exactly_one(self):
        assert numeric_count((-1.0, 0.0, 1.0)).count == 2  # x^2 - 1

    def test_double_root_on_grid_node(self):
        # (2x - 1)^2: one distinct root, hit exactly by a grid node
        r = numeric_count((1.0, -4.0, 4.0))
        assert r.count == 1 and not r.suspect

    def test_near_double_root_flagged_suspect(self):
        # (x - a)^2 + 1e-12 has no real root but dips below the certification
        # threshold; the scanner must flag the dip instead of guessing
        a = 0.512345
        r = numeric_count((a * a + 1e-12, -2 * a, 1.0))
        assert r.count == 0
        assert r.suspect
        lo, hi = r.suspect_intervals[0]
        assert lo <= a <= hi

    def test_parity_of_counts(self):
        # continuous law: distinct-zero count matches the degree parity
        dist = CoefficientDistribution(kind="normal")
        for n in (3, 9, 23, 41, 65):
            C = np.vstack([sample_coefficients(dist, n, trial_stream(47, (n << 20) | j))
                           for j in range(2000)])
            counts, suspect, _ = numeric_count_rows(C)
            ok = ~suspect
            assert np.all(counts[ok] % 2 == (n - 1) % 2)

    def test_locations_match_counts(self):
        dist = CoefficientDistribution(kind="normal")
        C = np.vstack([sample_coefficients(dist, 17, trial_stream(53, j))
                       for j in range(300)])
        counts, suspect, _, roots = numeric_count_rows(C, want_locations=True)
        for i in range(300):
            if not suspect[i]:
                assert len(roots[i]) == counts[i]

    def test_located_roots_are_roots(self):
        dist = CoefficientDistribution(kind="normal")
        C = np.vstack([sample_coefficients(dist, 17, trial_stream(59, j))
                       for j in range(100)])
        counts, suspect, _, roots = numeric_count_rows(C, want_locations=True)
        for i in range(100):
            if suspect[i]:
                continue
            for branch, u in roots[i]:
                if u >= 1.0:
                    x = 1.0 if branch in ("d", "r") else -1.0
                elif branch == "d":
                    x = u
                elif branch == "n":
                    x = -u
                elif branch == "r":
                    x = 1.0 / u
                else:
                    x = -1.0 / u
                f = np.polynomial.polynomial.polyval(x, C[i])
                scale = np.polynomial.polynomial.polyval(
                    abs(x), np.abs(C[i])) + 1e-300
                assert abs(f) / scale < 1e-9


class TestNoRealZero:
    def test_odd_degree_short_circuits(self):
        assert not has_no_real_zero((5.0, 2.0, 1.0, 3.0))

    def test_positive_quadratic(self):
        assert has_no_real_zero((1.0, 1.0, 1.0))

    def test_negative_leading(self):
        assert not has_no_real_zero((1.0, 1.0, -1.0))

    def test_rows_agree_with_counts(self):
        dist = CoefficientDistribution(kind="normal")
        n = 9
        C = np.vstack([sample_coefficients(dist, n, trial_stream(61, j))
                       for j in range(2000)])
        nozero, suspect = no_real_zero_rows(C)
        counts, suspect2, _ = numeric_count_rows(C)
        ok = ~(suspect | suspect2)
        np.testing.assert_array_equal(nozero[ok], counts[ok] == 0)

    def test_rows_match_scalar_predicate(self):
        dist = CoefficientDistribution(kind="normal")
        C = np.vstack([sample_coefficients(dist, 5, trial_stream(67, j))
                       for j in range(500)])
        nozero, suspect = no_real_zero_rows(C)
        for i in range(500):
            if not suspect[i]:
                assert has_no_real_zero(C[i]) == nozero[i]


class TestExactVsNumeric:
    def test_rademacher_agreement(self):
        # every disagreement must be flagged suspect; none slip through
        dist = CoefficientDistribution(kind="rademacher")
        bad_unflagged = 0
        total = 0
        for n in (9, 33, 65):
            C = np.vstack([sample_coefficients(dist, n, trial_stream(71, (n << 20) | j))
                           for j in range(700)]).astype(float)
            counts, suspect, _ = numeric_count_rows(C)
            for j in range(700):
                exact = sturm_count([int(v) for v in C[j]]).count
                total += 1
                if not suspect[j] and counts[j] != exact:
                    bad_unflagged += 1
        assert total == 2100
        assert bad_unflagged == 0


class TestGridSpec:
    def test_default_depth_scales_with_degree(self):
        g = GridSpec()
        assert g.resolved_t_max(64) == pytest.approx(math.log(64) + 6.0)
        assert g.resolved_t_max(2) == pytest.approx(math.log(2) + 6.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            GridSpec(t_max=-1.0)
        with pytest.raises(ValueError):
            GridSpec(points_per_unit_t=1)

    def test_polynomial_input_accepted(self):
        p = Polynomial((1, -3, 1))
        assert numeric_count(p).count == 2
        assert sturm_count(p).count == 2
