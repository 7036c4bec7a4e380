"""Sampling of the free Gaussian measure and the Gibbs-type density.

The free measure on the first N modes is the law of the random series with
coefficients c_n = g_n / (2*sqrt(pi*n)), where the g_n are i.i.d. standard
complex Gaussians, g_n = (h_n - i*l_n)/sqrt(2).  The Gibbs weight relative
to that measure is

    G_N(u) = chi_R(||S_N u||_{L2}^2 - alpha_N) * exp(-(2/3) * int (S_N u)^3)

with alpha_N the harmonic partial sum and chi_R a trapezoidal cutoff.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectral import SpectralField, alias_free_grid, full_line, project, synthesize

__all__ = [
    "GaussianDraw",
    "CutoffSpec",
    "WeightedSample",
    "sample_gaussians",
    "sample_phi",
    "phi_from_gaussians",
    "alpha",
    "f_n",
    "f_n_triple_sum",
    "g_n",
    "cutoff",
    "density_g",
    "resonant_split",
]


@dataclass(frozen=True)
class GaussianDraw:
    """One draw of the complex Gaussians g_n, n = 1..N (E|g_n|^2 = 1)."""

    g: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(np.asarray(self.g, dtype=np.complex128))
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("g must be a nonempty 1-d array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("non-finite Gaussian draw")
        arr.setflags(write=False)
        object.__setattr__(self, "g", arr)

    @property
    def max_mode(self) -> int:
        return self.g.size

    @property
    def h(self) -> np.ndarray:
        return math.sqrt(2.0) * self.g.real

    @property
    def l(self) -> np.ndarray:
        return -math.sqrt(2.0) * self.g.imag


@dataclass(frozen=True)
class CutoffSpec:
    """Trapezoidal plateau cutoff: 1 on [-R, R], linear to 0 over `taper`."""

    R: float = 5.0
    taper: float | None = None

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError("R must be positive")
        if self.taper is None:
            object.__setattr__(self, "taper", float(self.R))
        elif not self.taper > 0:
            raise ValueError("taper must be positive")


@dataclass(frozen=True)
class WeightedSample:
    field: SpectralField
    weight: float
    log_weight: float

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError("weight must be nonnegative")


def sample_gaussians(n_modes: int, rng: np.random.Generator,
                     size: int | None = None) -> np.ndarray:
    """Standard complex Gaussians, shape (size, n_modes) or (n_modes,)."""
    shape = (n_modes,) if size is None else (size, n_modes)
    h = rng.standard_normal(shape)
    l = rng.standard_normal(shape)
    return (h - 1j * l) / math.sqrt(2.0)


def phi_from_gaussians(g: np.ndarray) -> np.ndarray:
    """Coefficient rows c_n = g_n / (2*sqrt(pi*n)) for given Gaussian rows."""
    g = np.asarray(g, dtype=np.complex128)
    n = np.arange(1, g.shape[-1] + 1, dtype=np.float64)
    return g / (2.0 * np.sqrt(np.pi * n))


def sample_phi(n_modes: int, rng: np.random.Generator) -> tuple[SpectralField, GaussianDraw]:
    """One sample of the random Fourier series driving the free measure."""
    g = sample_gaussians(n_modes, rng)
    return SpectralField(phi_from_gaussians(g)), GaussianDraw(g)


def alpha(n_modes: int) -> float:
    """Harmonic partial sum: the expected L2 mass of the free sample."""
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    return float(math.fsum(1.0 / k for k in range(1, n_modes + 1)))


def f_n(u: SpectralField, n_modes: int) -> float:
    """int (S_N u)^3 over the circle, exact via alias-free quadrature."""
    v = project(u, n_modes)
    m = alias_free_grid(v.max_mode, 3)
    vals = synthesize(v, m)
    return float(2.0 * np.pi / m * math.fsum(vals ** 3))


def f_n_triple_sum(u: SpectralField, n_modes: int) -> float:
    """Cross-check route: 2*pi * sum_{n1+n2+n3=0} c_{n1} c_{n2} c_{n3}."""
    v = project(u, n_modes)
    nn = v.max_mode
    line = full_line(v)
    idx = np.arange(-nn, nn + 1)
    prod = np.outer(line, line)
    total = 0.0 + 0.0j
    n3 = -(idx[:, None] + idx[None, :])
    valid = (idx[:, None] != 0) & (idx[None, :] != 0) & (n3 != 0) & (np.abs(n3) <= nn)
    total = np.sum(prod[valid] * line[n3[valid] + nn])
    return float(2.0 * np.pi * total.real)


def g_n(u: SpectralField, n_modes: int) -> float:
    """||S_N u||_{L2}^2 - alpha_N."""
    v = project(u, n_modes)
    return float(4.0 * np.pi * np.sum(np.abs(v.coeffs) ** 2) - alpha(n_modes))


def cutoff(x: float, spec: CutoffSpec) -> float:
    """Trapezoid profile: 1 on the plateau, linear descent to 0, else 0."""
    ax = abs(x)
    if ax <= spec.R:
        return 1.0
    if ax >= spec.R + spec.taper:
        return 0.0
    return (spec.R + spec.taper - ax) / spec.taper


def density_g(u: SpectralField, n_modes: int, spec: CutoffSpec) -> WeightedSample:
    """Gibbs weight of u relative to the free measure (beta fixed at 2)."""
    chi = cutoff(g_n(u, n_modes), spec)
    log_exp = -(2.0 / 3.0) * f_n(u, n_modes)
    weight = chi * math.exp(log_exp)
    log_weight = -math.inf if chi == 0.0 else math.log(chi) + log_exp
    return WeightedSample(field=project(u, n_modes), weight=weight,
                          log_weight=log_weight)


def resonant_split(draw: GaussianDraw, n_modes: int) -> tuple[float, float]:
    """Split of the normalized cubic triple sum into resonant-pair and
    generic parts.

    F1 collects the (n, n, -2n)-type triples; F2 the triples with pairwise
    distinct absolute values.  Both carry the 1/(8*pi^{3/2}) normalization of
    the raw triple sum; the cubic integral of the sampled series equals
    2*pi times their sum.
    """
    g = draw.g[:n_modes]
    # F1: sum over 0<|n|<=N/2 of g_n^2 conj(g_2n)/|n|^{3/2}; the +-n halves
    # are conjugate, so the total is twice the real part of the n>0 half.
    half = n_modes // 2
    f1 = 0.0
    if half >= 1:
        n = np.arange(1, half + 1, dtype=np.float64)
        terms = (g[:half] ** 2) * np.conj(g[2 * np.arange(1, half + 1) - 1])
        # |n1 n2 n3| = n * n * 2n, hence the sqrt(2) in the denominator
        f1 = float(3.0 / (8.0 * np.pi ** 1.5)
                   * 2.0 * np.sum(terms.real / (math.sqrt(2.0) * n ** 1.5)))
    # F2: all zero-sum triples within the band with pairwise distinct |n_i|.
    gm = np.concatenate([np.conj(g[::-1]), [0.0], g])  # index m + n_modes
    f2 = 0.0 + 0.0j
    for n1 in range(-n_modes, n_modes + 1):
        if n1 == 0:
            continue
        for n2 in range(-n_modes, n_modes + 1):
            n3 = -n1 - n2
            if n2 == 0 or n3 == 0 or abs(n3) > n_modes:
                continue
            if abs(n1) == abs(n2) or abs(n1) == abs(n3) or abs(n2) == abs(n3):
                continue
            f2 += (gm[n1 + n_modes] * gm[n2 + n_modes] * gm[n3 + n_modes]
                   / math.sqrt(abs(n1) * abs(n2) * abs(n3)))
    f2 = float(f2.real) / (8.0 * np.pi ** 1.5)
    return f1, f2
