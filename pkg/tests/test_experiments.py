import numpy as np
import pytest

from gibbsbo import experiments as ex
from gibbsbo.dynamics import IntegratorConfig
from gibbsbo.gaussmeasure import CutoffSpec


class TestReportPlumbing:
    def test_verdict_status_checked(self):
        with pytest.raises(ValueError):
            ex.Verdict("x", "maybe", "")

    def test_passed_property(self):
        r = ex.ExperimentReport("t", {}, ["a"])
        r.verdicts.append(ex.Verdict("c", "pass", ""))
        assert r.passed
        r.verdicts.append(ex.Verdict("d", "inconclusive", ""))
        assert not r.passed


class TestCauchyG:
    def test_zero_samples_rejected(self):
        with pytest.raises(ValueError):
            ex.cauchy_g_experiment([4], 0, 1)

    def test_first_pair_hand_value(self):
        r = ex.cauchy_g_experiment([1], 30_000, 3)
        row = r.rows[0]
        assert row["exact"] == pytest.approx(0.25)
        assert abs(row["mc"] - 0.25) <= 3.0 * row["mc_se"]

    def test_reproducible(self):
        a = ex.cauchy_g_experiment([4, 8], 20_000, 11)
        b = ex.cauchy_g_experiment([4, 8], 20_000, 11)
        assert a.rows == b.rows

    def test_worker_count_invariance(self, monkeypatch):
        monkeypatch.setenv("GIBBSBO_THREADS", "1")
        a = ex.cauchy_g_experiment([4], 50_000, 11)
        monkeypatch.setenv("GIBBSBO_THREADS", "4")
        b = ex.cauchy_g_experiment([4], 50_000, 11)
        assert a.rows == b.rows


class TestCauchyF:
    def test_first_pair_oracle(self):
        r = ex.cauchy_f_experiment([1], 20_000, 5)
        row = r.rows[0]
        assert abs(row["mc"] - row["exact"]) <= 3.0 * row["mc_se"]

    def test_large_n_has_no_exact(self):
        r = ex.cauchy_f_experiment([128], 2_000, 5)
        assert r.rows[0]["exact"] == ""


class TestInvariance:
    def test_t_zero_bitwise(self):
        r = ex.invariance_experiment(
            4, CutoffSpec(), 0.0, ["exp_neg_hminus1"], 5_000,
            IntegratorConfig(), 9)
        row = r.rows[0]
        assert row["t0_est"] == row["t_est"]
        assert row["diff"] == 0.0
        assert r.passed

    def test_constant_observable_exact(self):
        r = ex.invariance_experiment(
            4, CutoffSpec(), 0.01, ["const_one"], 2_000,
            IntegratorConfig(), 9)
        row = r.rows[0]
        assert row["t0_est"] == 1.0
        assert row["t_est"] == 1.0
        assert row["combined_se"] == 0.0

    def test_tight_cutoff_warns(self):
        r = ex.invariance_experiment(
            4, CutoffSpec(R=1e-4, taper=1e-4), 0.0, ["const_one"], 2_000,
            IntegratorConfig(), 10)
        assert r.warnings

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            ex.invariance_experiment(4, CutoffSpec(), -1.0, ["const_one"],
                                     100, IntegratorConfig(), 1)


class TestDensityLp:
    def test_positivity_and_columns(self):
        r = ex.density_lp_experiment([4, 8], [1.0, 2.0], CutoffSpec(),
                                     10_000, 13)
        for row in r.rows:
            assert row["estimate"] > 0.0
        assert len(r.rows) == 4

    def test_degenerate_cutoff_kills_everything(self):
        r = ex.density_lp_experiment([4], [1.0], CutoffSpec(R=1e-6, taper=1e-6),
                                     5_000, 13)
        assert r.rows[0]["estimate"] == pytest.approx(0.0, abs=1e-12)


class TestConvergence:
    def test_frequencies_valid_and_nested(self):
        r = ex.convergence_in_measure_experiment([4, 8], [0.1, 0.3], 20_000, 17)
        by_key = {(row["quantity"], row["N"], row["eps"]): row["frequency"]
                  for row in r.rows}
        for q in ("f", "g", "G"):
            for n in (4, 8):
                assert 0.0 <= by_key[(q, n, 0.3)] <= by_key[(q, n, 0.1)] <= 1.0

    def test_f_frequency_decreases(self):
        r = ex.convergence_in_measure_experiment([16, 64], [0.1], 20_000, 17)
        by_key = {(row["quantity"], row["N"]): row["frequency"]
                  for row in r.rows if row["quantity"] == "f"}
        assert by_key[("f", 64)] <= by_key[("f", 16)]


class TestLinftyTail:
    def test_frequencies_decrease_in_lambda(self):
        r = ex.linfty_tail_experiment(16, [0.5, 1.0, 1.5, 2.0], 20_000, 19,
                                      fixed_conditioning=8.0)
        freqs = [row["frequency"] for row in r.rows]
        lams = [row["lam"] for row in r.rows]
        assert lams == sorted(lams)
        assert all(b <= a + 1e-12 for a, b in zip(freqs, freqs[1:]))
        assert all(0.0 <= f <= 1.0 for f in freqs)

    def test_underpowered_is_inconclusive(self):
        r = ex.linfty_tail_experiment(16, [6.0, 7.0, 8.0], 2_000, 19)
        assert r.verdicts[0].status == "inconclusive"
