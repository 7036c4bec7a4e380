import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gibbsbo.chaos import (ChaosFunctionSpec, MomentTailSpec, empirical_tail,
                           evaluate_chaos, exact_gaussian_tail,
                           gaussian_tail_bound, hermite, lp_bound,
                           moment_to_tail, chaos_lp_ratio)


class TestHermite:
    def test_first_three(self):
        for x in (-1.5, 0.0, 0.3, 2.0):
            assert hermite(0, x) == 1.0
            assert hermite(1, x) == pytest.approx(-x)
            assert hermite(2, x) == pytest.approx((x * x - 1.0) / math.sqrt(2.0))

    def test_degree_cap(self):
        with pytest.raises(ValueError):
            hermite(31, 0.0)

    @given(st.floats(-3, 3), st.integers(1, 8))
    @settings(max_examples=60, deadline=None)
    def test_generating_function(self, x, k_max):
        # exp(-lam*x - lam^2/2) = sum lam^k / sqrt(k!) h_k(x)
        lam = 0.35
        partial = sum(lam ** k / math.sqrt(math.factorial(k)) * hermite(k, x)
                      for k in range(25))
        assert partial == pytest.approx(
            math.exp(-lam * x - lam * lam / 2.0), abs=1e-10)

    def test_orthonormality_statistical(self):
        rng = np.random.default_rng(0)
        x = rng.standard_normal(100_000)
        for k in (1, 2, 3):
            vals = np.array([hermite(k, xi) for xi in x])
            assert np.mean(vals) == pytest.approx(0.0, abs=0.03)
            assert np.mean(vals ** 2) == pytest.approx(1.0, rel=0.05)


class TestChaosSpecs:
    def test_triple_needs_three_distinct(self):
        with pytest.raises(ValueError):
            ChaosFunctionSpec(kind="triple", dimension=3,
                              terms=(((1, 2, 2), 1.0),))

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            ChaosFunctionSpec(kind="septic", dimension=2,
                              terms=(((1, 2), 1.0),))

    def test_evaluate_product(self):
        spec = ChaosFunctionSpec(kind="triple", dimension=3,
                                 terms=(((1, 2, 3), 1.0),))
        x = np.array([[1.0, 2.0, 3.0], [1.0, -1.0, 2.0]])
        assert np.allclose(evaluate_chaos(spec, x), [6.0, -2.0])

    def test_evaluate_square(self):
        spec = ChaosFunctionSpec(kind="square", dimension=1,
                                 terms=(((1,), 2.0),))
        x = np.array([[2.0], [1.0]])
        # centered square: coef * (x^2 - 1)
        assert np.allclose(evaluate_chaos(spec, x), [6.0, 0.0])


class TestLpBounds:
    def test_bound_values(self):
        assert lp_bound("triple", 4.0) == pytest.approx(3.0 ** 1.5)
        assert lp_bound("square", 4.0) == pytest.approx(3.0)
        assert lp_bound("mixed", 6.0) == pytest.approx(5.0 ** 1.5)

    def test_exact_ratio_triple(self):
        # E[(x1 x2 x3)^4]^(1/4) / E[(x1 x2 x3)^2]^(1/2) = 27^(1/4)
        spec = ChaosFunctionSpec(kind="triple", dimension=3,
                                 terms=(((1, 2, 3), 1.0),))
        est, bound = chaos_lp_ratio(spec, 4.0, 400_000, seed=5)
        assert abs(est.value - 27.0 ** 0.25) <= 3.0 * est.std_error
        assert est.value <= bound + 3.0 * est.std_error

    def test_exact_ratio_square(self):
        # (x^2 - 1): E[.^4] = 60, E[.^2] = 2 => ratio 60^(1/4)/sqrt(2)
        spec = ChaosFunctionSpec(kind="square", dimension=1,
                                 terms=(((1,), 1.0),))
        est, bound = chaos_lp_ratio(spec, 4.0, 400_000, seed=6)
        assert abs(est.value - 60.0 ** 0.25 / math.sqrt(2.0)) <= 3.0 * est.std_error
        assert est.value <= bound + 3.0 * est.std_error


class TestGaussianTail:
    def test_bound_formula(self):
        c = np.array([1.0, 2.0])
        lam = 1.5
        expect = 2.0 * math.exp(-lam * lam / (2.0 * 5.0))
        assert gaussian_tail_bound(c, lam) == pytest.approx(expect)

    def test_exact_below_bound(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            c = rng.uniform(0.1, 2.0, size=rng.integers(1, 6))
            lam = rng.uniform(0.1, 4.0)
            assert exact_gaussian_tail(c, lam) <= gaussian_tail_bound(c, lam)

    def test_empirical_matches_exact(self):
        c = np.array([0.5, 1.0, 0.25])
        for lam in (0.5, 1.5):
            est = empirical_tail(c, lam, 200_000, seed=2)
            exact = exact_gaussian_tail(c, lam)
            assert abs(est.value - exact) <= 3.0 * max(est.std_error, 1e-12)


class TestMomentToTail:
    def test_delta_value(self):
        # C = 1, k = 1: delta = half of the ceiling 1/(2e)
        spec = MomentTailSpec(C=1.0, alpha=0.5, N=4, k=1)
        delta, tail = moment_to_tail(spec)
        assert delta == pytest.approx(1.0 / (4.0 * math.e))

    def test_delta_value_k3(self):
        # C = 1, k = 3: ceiling 3/(2e)
        spec = MomentTailSpec(C=1.0, alpha=0.4, N=4, k=3)
        delta, tail = moment_to_tail(spec)
        assert delta == pytest.approx(3.0 / (4.0 * math.e))

    def test_tail_shape(self):
        spec = MomentTailSpec(C=1.0, alpha=0.5, N=16, k=2)
        delta, tail = moment_to_tail(spec)
        one = tail(1.0)
        # doubling lambda multiplies the exponent by 2^(2/k) = 2
        expect_ratio = math.exp(-delta * 16.0 ** (2 * 0.5 / 2) * (2.0 - 1.0))
        assert tail(2.0) / one == pytest.approx(expect_ratio)

    def test_invalid_spec(self):
        with pytest.raises(ValueError):
            MomentTailSpec(C=-1.0, alpha=0.5, N=4, k=2)
        with pytest.raises(ValueError):
            MomentTailSpec(C=1.0, alpha=0.5, N=4, k=4)
