"""Gaussian chaos: Hermite polynomials, L^p/L^2 moment-ratio estimation,
the Khinchin-type tail bound, and the moment-to-exponential-tail conversion.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .montecarlo import EstimateWithError, block_sum, map_blocks
from .rngstreams import stream

__all__ = [
    "DEGREE_BY_KIND",
    "ChaosFunctionSpec",
    "MomentTailSpec",
    "hermite",
    "evaluate_chaos",
    "chaos_lp_ratio",
    "lp_bound",
    "gaussian_tail_bound",
    "exact_gaussian_tail",
    "empirical_tail",
    "moment_to_tail",
]

MAX_HERMITE_DEGREE = 30

# Chaos degree k per spec kind: the L^p/L^2 ratio is bounded by (p-1)^{k/2}.
DEGREE_BY_KIND = {"triple": 3, "mixed": 3, "square": 2}


def hermite(k: int, x: float) -> float:
    """Normalized Hermite polynomial h_k from the generating function

        exp(-lambda*x - lambda^2/2) = sum_k lambda^k / sqrt(k!) * h_k(x),

    evaluated by the three-term recurrence H_{k+1} = -x H_k - k H_{k-1}
    with h_k = H_k / sqrt(k!).
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    if k > MAX_HERMITE_DEGREE:
        raise ValueError(f"degree {k} exceeds recurrence accuracy bound "
                         f"{MAX_HERMITE_DEGREE}")
    h_prev, h_cur = 1.0, -x  # H_0, H_1
    if k == 0:
        return 1.0
    for j in range(1, k):
        h_prev, h_cur = h_cur, -x * h_cur - j * h_prev
    return h_cur / math.sqrt(math.factorial(k))


@dataclass(frozen=True)
class ChaosFunctionSpec:
    """A chaos polynomial in d independent standard Gaussians.

    kind "triple": sum of c * x_{n1} x_{n2} x_{n3} over distinct indices;
    kind "mixed":  sum of c * x_{n1} (x_{n2}^2 - 1), n1 != n2;
    kind "square": sum of c * (x_n^2 - 1).
    """

    kind: str
    dimension: int
    terms: tuple

    def __post_init__(self):
        if self.kind not in DEGREE_BY_KIND:
            raise ValueError(f"unknown kind {self.kind!r}")
        if not self.terms:
            raise ValueError("spec must have at least one term")
        arity = {"triple": 3, "mixed": 2, "square": 1}[self.kind]
        for idx, _coef in self.terms:
            idx = tuple(idx) if isinstance(idx, (tuple, list)) else (idx,)
            if len(idx) != arity:
                raise ValueError(f"kind {self.kind} needs {arity}-index terms")
            if any(i < 1 or i > self.dimension for i in idx):
                raise ValueError("index out of range 1..d")
            if len(set(idx)) != arity:
                raise ValueError("indices within a term must be distinct")

    @property
    def degree(self) -> int:
        return DEGREE_BY_KIND[self.kind]


def evaluate_chaos(spec: ChaosFunctionSpec, x: np.ndarray) -> np.ndarray:
    """Evaluate the chaos polynomial on sample rows x of shape (S, d)."""
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    out = np.zeros(x.shape[0])
    for idx, coef in spec.terms:
        idx = tuple(idx) if isinstance(idx, (tuple, list)) else (idx,)
        if spec.kind == "triple":
            n1, n2, n3 = idx
            out += coef * x[:, n1 - 1] * x[:, n2 - 1] * x[:, n3 - 1]
        elif spec.kind == "mixed":
            n1, n2 = idx
            out += coef * x[:, n1 - 1] * (x[:, n2 - 1] ** 2 - 1.0)
        else:
            (n,) = idx
            out += coef * (x[:, n - 1] ** 2 - 1.0)
    return out


def lp_bound(kind: str, p: float) -> float:
    """Hypercontractive bound (p-1)^{k/2} on the L^p/L^2 ratio."""
    return (p - 1.0) ** (DEGREE_BY_KIND[kind] / 2.0)


def chaos_lp_ratio(spec: ChaosFunctionSpec, p: float, samples: int,
                   seed: int) -> tuple[EstimateWithError, float]:
    """MC estimate of ||H||_p / ||H||_2 with bootstrap SE, and the bound.

    The SE comes from a bootstrap over block means of |H|^p and H^2, which
    respects the nonlinearity of the ratio.
    """
    if p < 2:
        raise ValueError("p must be >= 2")
    label = f"chaos:{spec.kind}:p={p}"

    def one_block(b, m):
        rng = stream(seed, b, label)
        h = evaluate_chaos(spec, rng.standard_normal((m, spec.dimension)))
        return (block_sum(np.abs(h) ** p), block_sum(h * h), m)

    parts = map_blocks(one_block, samples)
    sp = np.array([r[0] for r in parts])
    s2 = np.array([r[1] for r in parts])
    ns = np.array([r[2] for r in parts], dtype=np.float64)
    mp = sp.sum() / samples
    m2 = s2.sum() / samples
    ratio = mp ** (1.0 / p) / math.sqrt(m2)
    # bootstrap over blocks
    rng = stream(seed, 0, label + ":boot")
    n_blocks = len(parts)
    if n_blocks > 1:
        pick = rng.integers(0, n_blocks, size=(400, n_blocks))
        bp = sp[pick].sum(axis=1) / ns[pick].sum(axis=1)
        b2 = s2[pick].sum(axis=1) / ns[pick].sum(axis=1)
        boots = bp ** (1.0 / p) / np.sqrt(b2)
        se = float(np.std(boots, ddof=1))
    else:
        # single block: delta method on the two moments
        rngb = stream(seed, 0, label)
        h = evaluate_chaos(spec, rngb.standard_normal((samples, spec.dimension)))
        groups = np.arange(samples) % 64
        gp = np.bincount(groups, weights=np.abs(h) ** p)
        g2 = np.bincount(groups, weights=h * h)
        gn = np.bincount(groups).astype(float)
        pick = rng.integers(0, 64, size=(400, 64))
        boots = ((gp[pick].sum(axis=1) / gn[pick].sum(axis=1)) ** (1.0 / p)
                 / np.sqrt(g2[pick].sum(axis=1) / gn[pick].sum(axis=1)))
        se = float(np.std(boots, ddof=1))
    est = EstimateWithError(value=float(ratio), std_error=se,
                            n_samples=samples, seed=seed)
    return est, lp_bound(spec.kind, p)


def gaussian_tail_bound(c: np.ndarray, lam: float) -> float:
    """Khinchin-type bound 2*exp(-lam^2 / (2*sum c^2))."""
    c = np.asarray(c, dtype=np.float64)
    if not lam > 0:
        raise ValueError("lambda must be positive")
    s = float(np.sum(c * c))
    if s <= 0:
        raise ValueError("sum of c^2 must be positive")
    return 2.0 * math.exp(-lam * lam / (2.0 * s))


def exact_gaussian_tail(c: np.ndarray, lam: float) -> float:
    """Exact two-sided tail 2*(1 - Phi(lam/sigma)) of the Gaussian sum."""
    sigma = math.sqrt(float(np.sum(np.asarray(c, dtype=np.float64) ** 2)))
    return float(2.0 * norm.sf(lam / sigma))


def empirical_tail(c: np.ndarray, lam: float, samples: int,
                   seed: int) -> EstimateWithError:
    """Empirical exceedance frequency of |sum c_n l_n| > lambda."""
    c = np.asarray(c, dtype=np.float64)
    label = f"tail:lam={lam}"

    def one_block(b, m):
        rng = stream(seed, b, label)
        z = rng.standard_normal((m, c.size)) @ c
        return float(np.count_nonzero(np.abs(z) > lam))

    hits = sum(map_blocks(one_block, samples))
    freq = hits / samples
    se = math.sqrt(max(freq * (1.0 - freq), 1.0 / samples) / samples)
    return EstimateWithError(value=freq, std_error=se, n_samples=samples,
                             seed=seed)


@dataclass(frozen=True)
class MomentTailSpec:
    """Moment-growth hypothesis ||F||_p <= C * N^{-alpha} * p^{k/2}."""

    C: float
    alpha: float
    N: int
    k: int

    def __post_init__(self):
        if not (self.C > 0 and self.N >= 1 and self.k >= 1):
            raise ValueError("C, N, k must be positive")
        if self.k not in (1, 2, 3):
            raise ValueError("chaos degree k must be 1, 2 or 3")


def moment_to_tail(spec: MomentTailSpec):
    """Exponential tail implied by polynomial moment growth.

    Returns (delta, tail) where delta is half the admissible ceiling
    k / (2 * C^{2/k} * e) and tail(lam) = C1 * exp(-delta * N^{2a/k} * lam^{2/k}).
    """
    k, C = spec.k, spec.C
    ceiling = k / (2.0 * C ** (2.0 / k) * math.e)
    delta = 0.5 * ceiling
    # finite constant from the series bound at this delta; the geometric
    # ratio is 2*C^{2/k}*e*delta/k = 1/2 by the half-ceiling choice.
    r = 2.0 * C ** (2.0 / k) * math.e * delta / k
    low_order = math.fsum(
        C ** (2.0 * n / k) * (2.0 * n) ** n * delta ** n / math.factorial(n)
        for n in range(1, k)
    )
    c1 = 1.0 + low_order + (1.0 / math.sqrt(2.0 * math.pi)) * r ** k / (1.0 - r)

    scale = spec.N ** (2.0 * spec.alpha / k)

    def tail(lam: float) -> float:
        return c1 * math.exp(-delta * scale * lam ** (2.0 / k))

    return delta, tail
