"""Random-data estimates: dispersion symbol and resonance gap, the projected
square of the random series, the gauge transform, and the second Picard
iterate of the flow started from random data.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.fft import next_fast_len

from .gaussmeasure import GaussianDraw, phi_from_gaussians
from .spectral import (GridTooSmallError, SpectralField, alias_free_grid,
                       analyze, full_line, synthesize)

__all__ = [
    "ResonanceTriple",
    "OneSidedField",
    "sigma",
    "resonance_gap_scan",
    "pi_square",
    "inv_derivative",
    "p_plus",
    "gauge_transform",
    "picard_second",
    "picard_second_quadrature",
]


def sigma(n: int) -> int:
    """Dispersion symbol sigma(n) = -n*|n|."""
    return -n * abs(n)


@dataclass(frozen=True)
class ResonanceTriple:
    """Interaction (n1, n2) -> n with its non-resonance gap."""

    n1: int
    n2: int

    def __post_init__(self):
        if self.n1 == 0 or self.n2 == 0 or self.n1 + self.n2 == 0:
            raise ValueError("need nonzero n1, n2 and n1+n2")
        if self.gap < abs(self.n):
            raise AssertionError(
                f"resonance gap bound violated at ({self.n1}, {self.n2})")

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    @property
    def gap(self) -> int:
        return abs(sigma(self.n1) + sigma(self.n2) - sigma(self.n))


def resonance_gap_scan(limit: int) -> float:
    """Minimum of gap/|n| over all 0<|n1|,|n2|<=limit with n1+n2 != 0.

    Exact integer arithmetic; raises if any ratio drops below 1.
    """
    if limit < 2:
        raise ValueError("limit must be >= 2")
    vals = np.arange(-limit, limit + 1, dtype=np.int64)
    vals = vals[vals != 0]
    n1 = vals[:, None]
    n2 = vals[None, :]
    n = n1 + n2
    ok = n != 0
    gap = np.abs(-n1 * np.abs(n1) - n2 * np.abs(n2) + n * np.abs(n))
    ratio = gap[ok] / np.abs(n[ok])
    min_ratio = float(ratio.min())
    if min_ratio < 1.0:
        raise AssertionError(f"resonance gap bound violated: min ratio {min_ratio}")
    return min_ratio


def pi_square(u: SpectralField, s: float) -> tuple[SpectralField, float]:
    """Mean-removed square of u with its squared H^s norm.

    The product is formed on an alias-free grid, so the result carries the
    exact modes 1..2N of u^2 with the constant term discarded.
    """
    n = u.max_mode
    m = next_fast_len(2 * (2 * n) + 2)
    vals = synthesize(u, m)
    sq, _mean = analyze(vals * vals, 2 * n)
    k = np.arange(1, 2 * n + 1, dtype=np.float64)
    norm_sq = float(4.0 * np.pi * np.sum((1.0 + k * k) ** s * np.abs(sq.coeffs) ** 2))
    return sq, norm_sq


def inv_derivative(u: SpectralField) -> SpectralField:
    """Antiderivative with zero mean: c_n -> c_n / (i*n)."""
    n = np.arange(1, u.max_mode + 1, dtype=np.float64)
    return SpectralField(u.coeffs / (1j * n))


@dataclass(frozen=True)
class OneSidedField:
    """Positive-frequency-only coefficients (genuinely complex functions).

    Unlike SpectralField there is no implied negative band; the H^s norm is
    2*pi * sum_{n>=1} (1+n^2)^s |c_n|^2.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.ascontiguousarray(np.asarray(self.coeffs, dtype=np.complex128))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coeffs must be a nonempty 1-d array")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def max_mode(self) -> int:
        return self.coeffs.size

    def sobolev_norm_sq(self, s: float) -> float:
        n = np.arange(1, self.max_mode + 1, dtype=np.float64)
        return float(2.0 * np.pi
                     * np.sum((1.0 + n * n) ** s * np.abs(self.coeffs) ** 2))


def p_plus(u: SpectralField) -> OneSidedField:
    """Projection onto strictly positive frequencies."""
    return OneSidedField(u.coeffs)


def _p_plus_of_grid(values: np.ndarray, n_keep: int) -> OneSidedField:
    spec = np.fft.fft(np.asarray(values, dtype=np.complex128)) / values.size
    return OneSidedField(spec[1:n_keep + 1])


def gauge_transform(u: SpectralField, grid_size: int) -> OneSidedField:
    """P_+(exp(-i * dx^{-1} u) * u), evaluated pointwise on the grid.

    The result keeps modes 1..grid_size/2 - 1.  It is not Hermitian
    symmetric, hence the one-sided return type.
    """
    if grid_size < 8 * u.max_mode:
        raise GridTooSmallError(
            f"gauge transform needs a grid >= 8*N = {8 * u.max_mode}, got {grid_size}")
    v = synthesize(inv_derivative(u), grid_size)
    w = np.exp(-1j * v) * synthesize(u, grid_size)
    return _p_plus_of_grid(w, grid_size // 2 - 1)


def gauge_linearization(u: SpectralField, grid_size: int) -> OneSidedField:
    """First-order expansion P_+(u) - i P_+((dx^{-1}u) * u), test oracle."""
    v = synthesize(inv_derivative(u), grid_size)
    w = synthesize(u, grid_size) * (1.0 - 1j * v)
    return _p_plus_of_grid(w.astype(np.complex128), grid_size // 2 - 1)


def picard_second(draw: GaussianDraw, n_modes: int, t: float) -> SpectralField:
    """Second Picard iterate at time t for data built from the draw.

    Closed form derived from the Duhamel integral: for n != 0,

      u_n(t) = -n e^{it sigma(n)} sum_{n1} phi_{n1} phi_{n-n1}
               * (e^{it Delta} - 1)/Delta,

    with phi_m = g_m/(2*sqrt(pi*|m|)) and Delta the resonance denominator;
    the output lives on modes 1..2N.
    """
    c = phi_from_gaussians(draw.g[:n_modes])
    line = full_line(SpectralField(c))  # phi_m at index m + n_modes
    out = np.zeros(2 * n_modes, dtype=np.complex128)
    if t == 0.0:
        return SpectralField(out)
    m_idx = np.arange(-n_modes, n_modes + 1)
    for n in range(1, 2 * n_modes + 1):
        n1 = m_idx
        n2 = n - n1
        valid = (n1 != 0) & (n2 != 0) & (np.abs(n2) <= n_modes)
        a, b = n1[valid], n2[valid]
        delta = (-a * np.abs(a) - b * np.abs(b) + n * n).astype(np.float64)
        kern = (np.exp(1j * t * delta) - 1.0) / delta
        s = np.sum(line[a + n_modes] * line[b + n_modes] * kern)
        out[n - 1] = -n * np.exp(1j * t * sigma(n)) * s
    return SpectralField(out)


def picard_second_quadrature(draw: GaussianDraw, n_modes: int, t: float,
                             panels: int = 10_000) -> SpectralField:
    """Composite-Simpson quadrature of the Duhamel integral (oracle route)."""
    if panels % 2 == 1:
        panels += 1
    c = phi_from_gaussians(draw.g[:n_modes])
    line = full_line(SpectralField(c))
    m_idx = np.arange(-n_modes, n_modes + 1)
    sig = -m_idx * np.abs(m_idx)
    taus = np.linspace(0.0, t, panels + 1)
    w = np.ones(panels + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    w *= (t / panels) / 3.0
    out = np.zeros(2 * n_modes, dtype=np.complex128)
    for n in range(1, 2 * n_modes + 1):
        n1 = m_idx
        n2 = n - n1
        valid = (n1 != 0) & (n2 != 0) & (np.abs(n2) <= n_modes)
        a, b = n1[valid], n2[valid]
        pair = line[a + n_modes] * line[b + n_modes]
        phase = (sig[a + n_modes] + sig[b + n_modes]).astype(np.float64)
        integrand = np.exp(1j * np.outer(taus, phase)) @ pair
        duhamel = np.sum(w * np.exp(1j * (t - taus) * (-n * n)) * integrand)
        out[n - 1] = -1j * n * duhamel
    return SpectralField(out)
