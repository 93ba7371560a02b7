import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf, quad

from dercost import (
    DiscreteDistribution,
    ExtremeValueParams,
    HypergeometricParams,
    ValidationError,
    build_distribution,
    extreme_value_density,
    hypergeometric_pmf,
)
from dercost.distributions import hypergeometric_pmf_exact


def pmf_oracle(N, K, n, k):
    """Urn enumeration by recurrence on draws, exact rationals."""
    # P(k successes in n draws) via the sequential-draw recursion.
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def p(draws, succ, left_total, left_succ):
        if draws == 0:
            return Fraction(int(succ == 0))
        out = Fraction(0)
        if left_succ > 0 and succ > 0:
            out += Fraction(left_succ, left_total) * p(draws - 1, succ - 1, left_total - 1, left_succ - 1)
        if left_total - left_succ > 0:
            out += Fraction(left_total - left_succ, left_total) * p(draws - 1, succ, left_total - 1, left_succ)
        return out

    return p(n, k, N, K)


class TestHypergeometric:
    def test_total_probability(self):
        assert sum(hypergeometric_pmf_exact(70, 14, 10, k) for k in range(11)) == 1

    def test_mode_at_two(self):
        probs = [hypergeometric_pmf(70, 14, 10, k) for k in range(6)]
        assert max(range(6), key=probs.__getitem__) == 2

    def test_outside_support(self):
        assert hypergeometric_pmf(70, 14, 10, 14) == 0
        assert hypergeometric_pmf(70, 14, 10, -1) == 0
        # k below max(0, n + K - N)
        assert hypergeometric_pmf(10, 8, 5, 2) == 0

    @pytest.mark.parametrize("k", range(6))
    def test_matches_urn_recursion(self, k):
        assert hypergeometric_pmf_exact(70, 14, 10, k) == pmf_oracle(70, 14, 10, k)

    def test_large_population(self):
        total = sum(hypergeometric_pmf_exact(1000, 300, 200, k) for k in range(201))
        assert total == 1
        assert 0 < hypergeometric_pmf(1000, 300, 200, 60) < 1

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 200).flatmap(lambda N: st.tuples(st.just(N), st.integers(0, N), st.integers(0, N))))
    def test_sums_to_one_exactly(self, params):
        N, K, n = params
        assert sum(hypergeometric_pmf_exact(N, K, n, k) for k in range(n + 1)) == 1


class TestExtremeValue:
    def test_mode_value(self):
        assert extreme_value_density(3.0, 3.0, 1.5) == pytest.approx(math.exp(-1) / 1.5, rel=1e-15)
        assert extreme_value_density(3.0, 3.0, 1.5) == pytest.approx(0.24525296078096155, rel=1e-14)

    @pytest.mark.parametrize("x", [-50.0, -3.0, 0.0, 3.0, 6.0, 9.0])
    def test_positive(self, x):
        assert extreme_value_density(x, 3.0, 1.5) > 0

    def test_far_right_tail_is_zero_not_nan(self):
        assert extreme_value_density(1e6, 3.0, 1.5) == 0.0

    def test_normalized(self):
        mp.dps = 30
        mu, s = 3.0, 1.5
        total = quad(lambda x: mp.exp((x - mu) / s - mp.exp((x - mu) / s)) / s, [mu - 20 * s, mu, mu + 10 * s])
        assert abs(total - 1) < 1e-6
        # The implementation agrees with the mpmath integrand pointwise.
        for x in (-10.0, 0.0, 2.5, 4.0, 7.0):
            ref = mp.exp((mpf(x) - mu) / s - mp.exp((mpf(x) - mu) / s)) / s
            assert extreme_value_density(x, mu, s) == pytest.approx(float(ref), rel=1e-12)

    def test_bad_scale(self):
        with pytest.raises(ValidationError):
            extreme_value_density(1.0, 0.0, 0.0)


class TestBuildDistribution:
    def test_lifetime_default(self):
        d = build_distribution(HypergeometricParams())
        assert len(d) == 6
        assert d.mode == 17000
        assert d.values == (15000, 16000, 17000, 18000, 19000, 20000)

    def test_usage_default(self):
        d = build_distribution(ExtremeValueParams())
        assert len(d) == 5
        assert d.mode == 7700
        below = sum(p for v, p in d if v < 7700)
        above = sum(p for v, p in d if v > 7700)
        # The minimum-type density has its long tail on the low side.
        assert below > above

    @pytest.mark.parametrize("params", [HypergeometricParams(), ExtremeValueParams()])
    def test_sums_to_one(self, params):
        assert abs(math.fsum(build_distribution(params).probabilities) - 1) < 1e-12

    def test_single_point_grid(self):
        d = build_distribution(HypergeometricParams(k_values=(2,), values=(17000.0,)))
        assert d.values == (17000.0,) and d.probabilities == (1.0,)
        d = build_distribution(ExtremeValueParams(indices=(3.0,), values=(7700.0,)))
        assert d.probabilities == (1.0,)

    def test_hypergeometric_ratios_exact(self):
        d = build_distribution(HypergeometricParams())
        exact = [hypergeometric_pmf_exact(70, 14, 10, k) for k in range(6)]
        for a in range(6):
            for b in range(6):
                assert d.probabilities[a] / d.probabilities[b] == pytest.approx(
                    float(exact[a] / exact[b]), rel=1e-12
                )

    def test_extreme_value_ratios(self):
        p = ExtremeValueParams()
        d = build_distribution(p)
        dens = [extreme_value_density(x, p.location, p.scale) for x in p.indices]
        for a in range(5):
            for b in range(5):
                assert d.probabilities[a] / d.probabilities[b] == pytest.approx(dens[a] / dens[b], rel=1e-12)

    def test_zero_mass_rejected(self):
        with pytest.raises(ValidationError):
            build_distribution(HypergeometricParams(k_values=(11, 12), values=(1.0, 2.0)))

    def test_empty_grid_rejected(self):
        with pytest.raises(ValidationError):
            HypergeometricParams(k_values=(), values=())
        with pytest.raises(ValidationError):
            ExtremeValueParams(indices=(), values=())

    def test_mismatched_grid_rejected(self):
        with pytest.raises(ValidationError):
            ExtremeValueParams(indices=(1.0, 2.0), values=(1.0,))


class TestDiscreteDistribution:
    def test_validation(self):
        with pytest.raises(ValidationError, match="sum"):
            DiscreteDistribution((1.0, 2.0), (0.5, 0.6))
        with pytest.raises(ValidationError, match="increasing"):
            DiscreteDistribution((2.0, 1.0), (0.5, 0.5))
        with pytest.raises(ValidationError, match="at most"):
            DiscreteDistribution(tuple(range(13)), (1 / 13,) * 13)
        with pytest.raises(ValidationError):
            DiscreteDistribution((1.0, 2.0), (1.0, 0.0))

    def test_degenerate(self):
        d = DiscreteDistribution.degenerate(5000.0)
        assert d.mean == 5000.0 and d.mode == 5000.0
