"""Fourier-side representation of real mean-zero distributions on the circle.

A field is stored as the complex coefficients c_n for n = 1..N only; the
coefficients for negative n are implied by the reality condition
c_{-n} = conj(c_n) and the zero mode is fixed at 0.  This makes the
Hermitian-symmetry invariant unviolatable by construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.fft import next_fast_len

__all__ = [
    "GridTooSmallError",
    "SpectralField",
    "make_field",
    "zero_field",
    "project",
    "hilbert",
    "half_derivative",
    "derivative",
    "sobolev_norm_sq",
    "l2_norm_sq",
    "synthesize",
    "analyze",
    "full_line",
    "alias_free_grid",
]


class GridTooSmallError(ValueError):
    """Raised when a grid cannot represent the requested mode content."""


@dataclass(frozen=True)
class SpectralField:
    """Mean-zero real distribution on the circle, one-sided Fourier data.

    ``coeffs[k]`` holds c_n for n = k + 1.  Immutable value type; all
    operations on it are pure functions.
    """

    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.ascontiguousarray(np.asarray(self.coeffs, dtype=np.complex128))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coeffs must be a nonempty 1-d array")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def max_mode(self) -> int:
        return self.coeffs.size

    def coeff(self, n: int) -> complex:
        """Coefficient at any signed mode n (0 outside the stored band)."""
        if n == 0 or abs(n) > self.max_mode:
            return 0.0 + 0.0j
        return complex(self.coeffs[n - 1]) if n > 0 else complex(np.conj(self.coeffs[-n - 1]))


def make_field(coeffs) -> SpectralField:
    return SpectralField(np.asarray(coeffs))


def zero_field(max_mode: int) -> SpectralField:
    return SpectralField(np.zeros(max_mode, dtype=np.complex128))


def full_line(u: SpectralField) -> np.ndarray:
    """Coefficients on the full line n = -N..N (length 2N+1, index n + N)."""
    n = u.max_mode
    line = np.zeros(2 * n + 1, dtype=np.complex128)
    line[n + 1:] = u.coeffs
    line[:n] = np.conj(u.coeffs[::-1])
    return line


def project(u: SpectralField, max_mode: int) -> SpectralField:
    """Dirichlet projection: zero out every mode with |n| > max_mode."""
    if max_mode < 1:
        raise ValueError("max_mode must be >= 1")
    if max_mode >= u.max_mode:
        return u
    return SpectralField(u.coeffs[:max_mode])


def hilbert(u: SpectralField) -> SpectralField:
    """Hilbert transform: multiply c_n by -i*sign(n)."""
    return SpectralField(-1j * u.coeffs)


def half_derivative(u: SpectralField) -> SpectralField:
    """Half derivative: multiply c_n by |n|**(1/2)."""
    n = np.arange(1, u.max_mode + 1, dtype=np.float64)
    return SpectralField(np.sqrt(n) * u.coeffs)


def derivative(u: SpectralField) -> SpectralField:
    """d/dx: multiply c_n by i*n."""
    n = np.arange(1, u.max_mode + 1, dtype=np.float64)
    return SpectralField(1j * n * u.coeffs)


def sobolev_norm_sq(u: SpectralField, s: float) -> float:
    """Squared H^s norm: 2*pi * sum over n != 0 of (1+n^2)^s |c_n|^2."""
    n = np.arange(1, u.max_mode + 1, dtype=np.float64)
    return float(4.0 * np.pi * np.sum((1.0 + n * n) ** s * np.abs(u.coeffs) ** 2))


def l2_norm_sq(u: SpectralField) -> float:
    return sobolev_norm_sq(u, 0.0)


def alias_free_grid(max_mode: int, factor: int = 3) -> int:
    """Smallest fast FFT length >= factor*max_mode + 1.

    factor=3 keeps products of two degree-N polynomials alias-free after
    projection back to modes <= N, and makes cubic integrals exact.
    """
    return next_fast_len(factor * max_mode + 1, real=False)


def synthesize(u: SpectralField, grid_size: int) -> np.ndarray:
    """Values on the uniform grid x_j = 2*pi*j/M, j = 0..M-1 (real array)."""
    n = u.max_mode
    if grid_size < 2 * n + 1:
        raise GridTooSmallError(
            f"grid of {grid_size} points cannot represent modes up to {n}"
        )
    spec = np.zeros(grid_size, dtype=np.complex128)
    spec[1:n + 1] = u.coeffs
    spec[-n:] = np.conj(u.coeffs[::-1])
    values = np.fft.ifft(spec) * grid_size
    return values.real.copy()


def analyze(values: np.ndarray, max_mode: int) -> tuple[SpectralField, float]:
    """Inverse of synthesize on degree-N trigonometric polynomials.

    Returns the mean-zero field together with the discarded sample mean; it
    is the caller's responsibility to check the mean where it matters.
    """
    values = np.asarray(values, dtype=np.float64)
    grid_size = values.size
    if grid_size < 2 * max_mode + 1:
        raise GridTooSmallError(
            f"analyze needs at least {2 * max_mode + 1} points for N={max_mode}, got {grid_size}"
        )
    spec = np.fft.fft(values) / grid_size
    mean = float(spec[0].real)
    return SpectralField(spec[1:max_mode + 1]), mean
