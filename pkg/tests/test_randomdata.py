import math

import numpy as np
import pytest

from gibbsbo.gaussmeasure import GaussianDraw, sample_gaussians, sample_phi
from gibbsbo.randomdata import (OneSidedField, ResonanceTriple,
                                gauge_linearization, gauge_transform,
                                inv_derivative, p_plus, picard_second,
                                picard_second_quadrature, pi_square,
                                resonance_gap_scan, sigma)
from gibbsbo.rngstreams import stream
from gibbsbo.spectral import (GridTooSmallError, SpectralField, derivative,
                              make_field, sobolev_norm_sq)


class TestSymbol:
    def test_values(self):
        assert sigma(3) == -9
        assert sigma(-3) == 9
        assert sigma(0) == 0


class TestResonance:
    def test_triple_gap(self):
        t = ResonanceTriple(2, 3)
        assert t.n == 5
        assert t.gap == abs(sigma(2) + sigma(3) - sigma(5))
        assert t.gap >= abs(t.n)

    def test_rejects_degenerate(self):
        with pytest.raises(ValueError):
            ResonanceTriple(0, 3)
        with pytest.raises(ValueError):
            ResonanceTriple(2, -2)

    def test_scan_small(self):
        assert resonance_gap_scan(8) >= 1.0

    def test_scan_rejects_tiny_limit(self):
        with pytest.raises(ValueError):
            resonance_gap_scan(1)


class TestPiSquare:
    def test_hand_value(self):
        # u = 2 cos x: u^2 = 2 + 2 cos 2x, mean-removed square has c_2 = 1
        u = make_field([1.0])
        sq, norm = pi_square(u, 0.0)
        assert sq.max_mode == 2
        assert sq.coeff(1) == pytest.approx(0.0, abs=1e-13)
        assert sq.coeff(2) == pytest.approx(1.0)
        assert norm == pytest.approx(4.0 * np.pi)
        _, n1 = pi_square(u, 1.0)
        assert n1 == pytest.approx(4.0 * np.pi * 5.0)

    def test_norm_weight(self):
        u = make_field([1.0])
        _, n1 = pi_square(u, -1.0)
        assert n1 == pytest.approx(4.0 * np.pi / 5.0)


class TestInverseDerivative:
    def test_round_trip(self):
        rng = stream(0, 0, "invd")
        u, _ = sample_phi(6, rng)
        v = derivative(inv_derivative(u))
        assert np.allclose(v.coeffs, u.coeffs, atol=1e-14)


class TestOneSided:
    def test_norm(self):
        f = OneSidedField(np.array([1.0 + 0.0j]))
        assert f.sobolev_norm_sq(0.0) == pytest.approx(2.0 * np.pi)

    def test_p_plus_keeps_positive_band(self):
        u = make_field([1.0 + 2.0j, 3.0])
        f = p_plus(u)
        assert np.array_equal(f.coeffs, u.coeffs)


class TestGauge:
    def test_grid_floor(self):
        u = make_field([1.0, 0.5])
        with pytest.raises(GridTooSmallError):
            gauge_transform(u, 8)

    def test_small_amplitude_linearization(self):
        rng = stream(3, 0, "gauge")
        u, _ = sample_phi(8, rng)
        eps = 1e-4
        v = SpectralField(eps * u.coeffs)
        grid = 256
        full = gauge_transform(v, grid).coeffs
        lin = gauge_linearization(v, grid).coeffs
        # the quadratic remainder is O(eps^2)
        assert np.max(np.abs(full - lin)) < 10.0 * eps * eps

    def test_grid_doubling_stable(self):
        rng = stream(4, 0, "gauge2")
        u, _ = sample_phi(16, rng)
        a = gauge_transform(u, 128)
        b = gauge_transform(u, 256)
        k = min(a.max_mode, b.max_mode)
        na = 2.0 * np.pi * np.sum(
            (1.0 + np.arange(1, k + 1) ** 2) ** -0.5 * np.abs(a.coeffs[:k]) ** 2)
        nb = 2.0 * np.pi * np.sum(
            (1.0 + np.arange(1, k + 1) ** 2) ** -0.5 * np.abs(b.coeffs[:k]) ** 2)
        assert abs(na - nb) < 1e-8 * max(na, 1.0)


class TestPicard:
    def test_zero_time_vanishes(self):
        draw = GaussianDraw(sample_gaussians(4, stream(5, 0, "pic")))
        u2 = picard_second(draw, 4, 0.0)
        assert np.all(u2.coeffs == 0.0)

    def test_band_doubles(self):
        draw = GaussianDraw(sample_gaussians(4, stream(6, 0, "pic")))
        assert picard_second(draw, 4, 0.3).max_mode == 8

    def test_matches_quadrature(self):
        draw = GaussianDraw(sample_gaussians(8, stream(7, 0, "pic")))
        a = picard_second(draw, 8, 0.7).coeffs
        b = picard_second_quadrature(draw, 8, 0.7, panels=10_000).coeffs
        assert np.max(np.abs(a - b)) < 1e-8

    def test_quadrature_panel_invariance(self):
        # the check should not hinge on the quadrature resolution
        draw = GaussianDraw(sample_gaussians(4, stream(8, 0, "pic")))
        b1 = picard_second_quadrature(draw, 4, 0.5, panels=2_000).coeffs
        b2 = picard_second_quadrature(draw, 4, 0.5, panels=4_000).coeffs
        assert np.max(np.abs(b1 - b2)) < 1e-10
