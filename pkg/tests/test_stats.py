from __future__ import annotations

import math
import random

import pytest
import scipy.special
import scipy.stats
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from wellness.stats import (
    MIN_P,
    CoefficientOutOfRangeError,
    DegenerateVarianceError,
    Method,
    PairedSeries,
    Strength,
    classify_strength,
    correlate,
    kendall,
    p_value,
    pearson,
    rank_average_ties,
    regularized_incomplete_beta,
    spearman,
    t_transform_p,
)

finite_floats = st.floats(min_value=-1e6, max_value=1e6,
                          allow_nan=False, allow_infinity=False)


def random_series(rng, n, tied=False):
    if tied:
        x = [float(rng.randrange(0, max(2, n // 2))) for _ in range(n)]
        y = [float(rng.randrange(0, max(2, n // 2))) for _ in range(n)]
        if len(set(x)) < 2:
            x[0] += 1.0
        if len(set(y)) < 2:
            y[0] += 1.0
        return x, y
    return ([rng.gauss(0, 1) for _ in range(n)],
            [rng.gauss(0, 1) for _ in range(n)])


class TestPearson:
    def test_perfect_direct(self):
        assert pearson(PairedSeries([1, 2, 3], [1, 2, 3])) == 1.0

    def test_perfect_inverse(self):
        assert pearson(PairedSeries([1, 2, 3], [3, 2, 1])) == -1.0

    def test_matches_textbook_formula(self):
        rng = random.Random(11)
        for _ in range(20):
            x, y = random_series(rng, 20)
            mine = pearson(PairedSeries(x, y))
            assert mine == pytest.approx(oracles.pearson_oracle(x, y), abs=1e-12)

    def test_degenerate(self):
        with pytest.raises(DegenerateVarianceError):
            pearson(PairedSeries([1.0, 1.0, 1.0], [1, 2, 3]))
        with pytest.raises(DegenerateVarianceError):
            pearson(PairedSeries([1, 2, 3], [4.0, 4.0, 4.0]))

    def test_series_validation(self):
        with pytest.raises(ValueError):
            PairedSeries([1, 2], [1, 2])
        with pytest.raises(ValueError):
            PairedSeries([1, 2, 3], [1, 2])


class TestRanks:
    def test_no_ties(self):
        assert rank_average_ties([10, 20, 30]) == [1, 2, 3]

    def test_pair_tie(self):
        assert rank_average_ties([5, 5, 9]) == [1.5, 1.5, 3]

    def test_triple_tie(self):
        # mean of ranks 1..3 is 2; verified against stable-sort enumeration
        assert rank_average_ties([2, 2, 2, 7]) == [2, 2, 2, 4]
        assert oracles.rank_oracle([2, 2, 2, 7]) == [2, 2, 2, 4]

    def test_matches_enumeration_oracle(self):
        rng = random.Random(5)
        for _ in range(30):
            values = [float(rng.randrange(0, 6)) for _ in range(rng.randrange(1, 25))]
            assert rank_average_ties(values) == oracles.rank_oracle(values)

    @given(st.lists(finite_floats, min_size=1, max_size=50))
    def test_rank_sum_invariant(self, values):
        n = len(values)
        assert math.fsum(rank_average_ties(values)) == pytest.approx(n * (n + 1) / 2)


class TestSpearman:
    def test_monotone_nonlinear(self):
        assert spearman(PairedSeries([1, 2, 3, 4], [1, 4, 9, 16])) == 1.0

    def test_reversed(self):
        assert spearman(PairedSeries([1, 2, 3, 4], [16, 9, 4, 1])) == -1.0

    def test_ties_match_rank_then_pearson_oracle(self):
        rng = random.Random(23)
        for _ in range(25):
            x, y = random_series(rng, 15, tied=True)
            mine = spearman(PairedSeries(x, y))
            assert mine == pytest.approx(oracles.spearman_oracle(x, y), abs=1e-12)

    def test_all_tied_degenerate(self):
        with pytest.raises(DegenerateVarianceError):
            spearman(PairedSeries([2, 2, 2], [1, 2, 3]))

    def test_tie_free_closed_form(self):
        # 1 - 6*sum(d^2)/(n(n^2-1)) on distinct values
        rng = random.Random(3)
        for _ in range(10):
            n = rng.randrange(4, 20)
            x = rng.sample(range(1000), n)
            y = rng.sample(range(1000), n)
            rx = rank_average_ties(x)
            ry = rank_average_ties(y)
            d2 = sum((a - b) ** 2 for a, b in zip(rx, ry))
            closed = 1 - 6 * d2 / (n * (n * n - 1))
            assert spearman(PairedSeries(x, y)) == pytest.approx(closed, abs=1e-12)


class TestKendall:
    def test_identical_orderings(self):
        assert kendall(PairedSeries([1, 2, 3, 4, 5], [10, 20, 30, 40, 50])) == 1.0

    def test_one_inversion(self):
        # 6 pairs: 5 concordant, 1 discordant -> (5-1)/6
        assert kendall(PairedSeries([1, 2, 3, 4], [1, 2, 4, 3])) == pytest.approx(4 / 6)

    def test_fully_reversed(self):
        assert kendall(PairedSeries([1, 2, 3, 4, 5], [5, 4, 3, 2, 1])) == -1.0

    def test_matches_pair_counting_oracle(self):
        rng = random.Random(31)
        for _ in range(25):
            x, y = random_series(rng, 12, tied=True)
            mine = kendall(PairedSeries(x, y))
            assert mine == pytest.approx(oracles.kendall_oracle(x, y), abs=1e-12)

    def test_tau_b_equals_tau_a_without_ties(self):
        rng = random.Random(17)
        for _ in range(10):
            n = rng.randrange(4, 15)
            x = rng.sample(range(1000), n)
            y = rng.sample(range(1000), n)
            concordant = discordant = 0
            for i in range(n):
                for j in range(i + 1, n):
                    product = (x[i] - x[j]) * (y[i] - y[j])
                    concordant += product > 0
                    discordant += product < 0
            tau_a = (concordant - discordant) / (n * (n - 1) / 2)
            assert kendall(PairedSeries(x, y)) == pytest.approx(tau_a, abs=1e-12)

    def test_all_tied_degenerate(self):
        with pytest.raises(DegenerateVarianceError):
            kendall(PairedSeries([1, 1, 1], [1, 2, 3]))


class TestPValues:
    def test_zero_statistic_gives_one(self):
        series = PairedSeries(list(range(30)), list(range(30)))
        assert p_value(Method.PEARSON, 0.0, series) == 1.0
        assert p_value(Method.SPEARMAN, 0.0, series) == 1.0
        assert t_transform_p(0.0, 30) == 1.0
        # kendall with C == D
        balanced = PairedSeries([1, 2, 3, 4], [1, 4, 3, 2])
        assert kendall(balanced) == 0.0
        assert p_value(Method.KENDALL, 0.0, balanced) == 1.0

    def test_paper_temperature_stress_cell(self):
        # r = 0.5095 over 61 submissions reproduces the published 2.53e-5
        p = t_transform_p(0.5095, 61)
        assert 2.0e-5 <= p <= 3.0e-5
        assert p == pytest.approx(2.53e-5, abs=5e-6)

    def test_perfect_r_clamps_to_min_positive(self):
        assert t_transform_p(1.0, 10) == MIN_P
        assert t_transform_p(-1.0, 10) == MIN_P
        assert MIN_P > 0.0

    def test_betainc_matches_scipy(self):
        rng = random.Random(0)
        for _ in range(300):
            a = rng.uniform(0.5, 80)
            b = rng.uniform(0.5, 80)
            x = rng.random()
            assert regularized_incomplete_beta(a, b, x) == pytest.approx(
                scipy.special.betainc(a, b, x), abs=1e-12
            )

    def test_t_transform_matches_scipy(self):
        rng = random.Random(1)
        for _ in range(100):
            r = rng.uniform(-0.999, 0.999)
            n = rng.randrange(3, 200)
            t = r * math.sqrt(n - 2) / math.sqrt(1 - r * r)
            expected = 2 * scipy.stats.t.sf(abs(t), n - 2)
            assert t_transform_p(r, n) == pytest.approx(expected, rel=1e-10, abs=1e-300)

    def test_spearman_p_close_to_sampled_permutation(self):
        rng = random.Random(8)
        x, y = random_series(rng, 20)
        series = PairedSeries(x, y)
        analytic = p_value(Method.SPEARMAN, spearman(series), series)
        sampled = oracles.sampled_permutation_p(
            x, y, oracles.spearman_oracle, draws=10_000, seed=8
        )
        assert analytic == pytest.approx(sampled, abs=0.02)

    def test_kendall_p_close_to_exact_enumeration(self):
        rng = random.Random(13)
        for _ in range(8):
            x, y = random_series(rng, 7)
            series = PairedSeries(x, y)
            analytic = p_value(Method.KENDALL, kendall(series), series)
            exact = oracles.exact_permutation_p_kendall(x, y)
            assert analytic == pytest.approx(exact, abs=0.05)

    def test_kendall_continuity_negligible_at_large_n(self):
        rng = random.Random(21)
        x, y = random_series(rng, 400, tied=True)
        series = PairedSeries(x, y)
        analytic = p_value(Method.KENDALL, kendall(series), series)
        _, scipy_p = scipy.stats.kendalltau(x, y)
        assert analytic == pytest.approx(scipy_p, rel=0.02, abs=1e-4)

    def test_p_in_unit_interval(self):
        rng = random.Random(2)
        for method in Method:
            for _ in range(20):
                x, y = random_series(rng, rng.randrange(3, 30))
                series = PairedSeries(x, y)
                r = {"pearson": pearson, "spearman": spearman,
                     "kendall": kendall}[method.value](series)
                p = p_value(method, r, series)
                assert 0.0 < p <= 1.0


class TestClassifyStrength:
    @pytest.mark.parametrize("r,expected", [
        (0.35, Strength.WEAK),
        (0.36, Strength.MODERATE),
        (0.67, Strength.MODERATE),
        (0.68, Strength.STRONG),
        (0.7277, Strength.STRONG),
        (0.89, Strength.STRONG),
        (0.90, Strength.VERY_STRONG),
        (0.95, Strength.VERY_STRONG),
        (0.0, Strength.WEAK),
        (1.0, Strength.VERY_STRONG),
    ])
    def test_probe_set(self, r, expected):
        assert classify_strength(r) is expected
        assert classify_strength(-r) is expected  # sign-symmetric

    def test_rounding_closes_band_gap(self):
        # 0.355 rounds half-up to 0.36
        assert classify_strength(0.355) is Strength.MODERATE
        assert classify_strength(0.354) is Strength.WEAK
        assert classify_strength(0.895) is Strength.VERY_STRONG

    def test_out_of_range(self):
        with pytest.raises(CoefficientOutOfRangeError):
            classify_strength(1.2)


class TestCorrelate:
    def test_perfect_linear_bundle(self):
        series = PairedSeries(list(range(10)), [2 * v + 1 for v in range(10)])
        result = correlate(Method.PEARSON, series)
        assert result.r == 1.0
        assert result.strength is Strength.VERY_STRONG
        assert result.significant
        assert result.n == 10

    def test_reversed_kendall(self):
        series = PairedSeries(list(range(8)), list(range(8))[::-1])
        result = correlate(Method.KENDALL, series)
        assert result.r == -1.0
        assert result.significant

    def test_independent_noise_verdict_matches_permutation_oracle(self):
        rng = random.Random(42)
        x, y = random_series(rng, 10)
        result = correlate(Method.SPEARMAN, PairedSeries(x, y))
        sampled = oracles.sampled_permutation_p(
            x, y, oracles.spearman_oracle, draws=10_000, seed=42
        )
        assert result.significant == (sampled < 0.05)

    def test_significant_iff_p_below_threshold(self):
        rng = random.Random(6)
        for _ in range(20):
            x, y = random_series(rng, 12)
            result = correlate(Method.PEARSON, PairedSeries(x, y))
            assert result.significant == (result.p_value < 0.05)


class TestInvarianceProperties:
    @given(st.data())
    @settings(max_examples=40, deadline=None)
    def test_swap_symmetry(self, data):
        n = data.draw(st.integers(4, 20))
        x = data.draw(st.lists(finite_floats, min_size=n, max_size=n))
        y = data.draw(st.lists(finite_floats, min_size=n, max_size=n))
        series = PairedSeries(x, y)
        for fn in (pearson, spearman, kendall):
            try:
                forward = fn(series)
            except DegenerateVarianceError:
                continue
            assert fn(series.swapped()) == pytest.approx(forward, abs=1e-12)

    def test_pearson_affine_invariance(self):
        rng = random.Random(9)
        for _ in range(20):
            x, y = random_series(rng, 15)
            base = pearson(PairedSeries(x, y))
            a, b = rng.uniform(0.1, 5), rng.uniform(-10, 10)
            scaled = pearson(PairedSeries([a * v + b for v in x], y))
            assert scaled == pytest.approx(base, abs=1e-12)
            negated = pearson(PairedSeries([-v for v in x], y))
            assert negated == -base

    def test_rank_methods_monotone_invariance(self):
        rng = random.Random(10)
        transforms = (math.exp, lambda v: v ** 3, lambda v: 2 * v + 1)
        for _ in range(10):
            x, y = random_series(rng, 12)
            x = [v for v in x]
            for transform in transforms:
                tx = [transform(v) for v in x]
                assert spearman(PairedSeries(tx, y)) == spearman(PairedSeries(x, y))
                assert kendall(PairedSeries(tx, y)) == kendall(PairedSeries(x, y))
