import math

import numpy as np
import pytest

from gibbsbo.montecarlo import (EstimateWithError, KahanAccumulator,
                                block_sum, effective_sample_size,
                                jackknife_se, map_blocks, mc_mean,
                                snis_estimate, snis_paired_diff)
from gibbsbo.rngstreams import BLOCK_SIZE, block_plan, stream, worker_count


class TestStreams:
    def test_deterministic(self):
        a = stream(1, 0, "x").standard_normal(5)
        b = stream(1, 0, "x").standard_normal(5)
        assert np.array_equal(a, b)

    def test_blocks_differ(self):
        a = stream(1, 0, "x").standard_normal(5)
        b = stream(1, 1, "x").standard_normal(5)
        assert not np.array_equal(a, b)

    def test_labels_differ(self):
        a = stream(1, 0, "x").standard_normal(5)
        b = stream(1, 0, "y").standard_normal(5)
        assert not np.array_equal(a, b)

    def test_block_plan_covers_budget(self):
        plan = block_plan(3 * BLOCK_SIZE + 7)
        assert sum(m for _, m in plan) == 3 * BLOCK_SIZE + 7
        assert [b for b, _ in plan] == list(range(len(plan)))

    def test_block_plan_rejects_zero(self):
        with pytest.raises(ValueError):
            block_plan(0)

    def test_worker_count_env(self, monkeypatch):
        monkeypatch.setenv("GIBBSBO_THREADS", "3")
        assert worker_count() == 3


class TestAccumulation:
    def test_kahan_beats_naive(self):
        acc = KahanAccumulator()
        vals = [1e16, 1.0, -1e16, 1.0]
        for v in vals:
            acc.add(v)
        assert acc.total == 2.0

    def test_block_sum_exact(self):
        vals = np.array([1e16, 1.0, -1e16, 1.0])
        assert block_sum(vals) == 2.0


class TestEstimates:
    def test_agreement_helper(self):
        e = EstimateWithError(value=1.0, std_error=0.1, n_samples=10, seed=0)
        assert e.agrees_with(1.2)
        assert not e.agrees_with(1.5)

    def test_mc_mean_gaussian(self):
        def sample(b, m):
            return stream(5, b, "mcm").standard_normal(m)

        est = mc_mean(sample, 100_000, seed=5)
        assert abs(est.value) <= 3.0 * est.std_error
        assert est.std_error == pytest.approx(1.0 / math.sqrt(100_000), rel=0.05)

    def test_map_blocks_worker_independent(self, monkeypatch):
        def work(b, m):
            return block_sum(stream(9, b, "w").standard_normal(m))

        monkeypatch.setenv("GIBBSBO_THREADS", "1")
        a = map_blocks(work, 3 * BLOCK_SIZE)
        monkeypatch.setenv("GIBBSBO_THREADS", "8")
        b = map_blocks(work, 3 * BLOCK_SIZE)
        assert a == b


class TestSnis:
    def test_constant_observable_exact(self):
        w = np.array([0.3, 1.7, 0.5])
        est = snis_estimate(w, np.ones(3), 3, 0)
        assert est.value == 1.0
        assert est.std_error == 0.0

    def test_all_weights_zero_raises(self):
        with pytest.raises(ValueError):
            snis_estimate(np.zeros(4), np.ones(4), 4, 0)

    def test_paired_diff_zero_for_identical(self):
        w = np.array([0.5, 1.5])
        h = np.array([2.0, 3.0])
        d = snis_paired_diff(w, h, h, 2, 0)
        assert d.value == 0.0

    def test_ess_bounds(self):
        assert effective_sample_size(np.ones(10)) == pytest.approx(10.0)
        w = np.zeros(10)
        w[0] = 1.0
        assert effective_sample_size(w) == pytest.approx(1.0)

    def test_jackknife_close_to_delta_method(self):
        rng = np.random.default_rng(21)
        w = rng.uniform(0.1, 1.0, size=20_000)
        h = rng.standard_normal(20_000)
        est = snis_estimate(w, h, 20_000, 0)
        jse = jackknife_se(w, h, n_groups=50)
        assert jse == pytest.approx(est.std_error, rel=0.25)
