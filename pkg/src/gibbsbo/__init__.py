"""Spectral simulation and Monte Carlo verification toolkit for the
truncated periodic Benjamin-Ono equation and its weighted Gaussian measure.
"""

from .spectral import SpectralField, make_field, sobolev_norm_sq
from .dynamics import IntegratorConfig, evolve, hamiltonian
from .gaussmeasure import CutoffSpec, density_g, sample_phi
from .montecarlo import EstimateWithError

__all__ = [
    "SpectralField",
    "make_field",
    "sobolev_norm_sq",
    "IntegratorConfig",
    "evolve",
    "hamiltonian",
    "CutoffSpec",
    "density_g",
    "sample_phi",
    "EstimateWithError",
]

__version__ = "0.1.0"
