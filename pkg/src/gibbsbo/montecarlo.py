"""Monte Carlo accumulation and estimation helpers.

All long accumulations go through compensated summation so that numerical
error stays far below the statistical resolution of the 3-standard-error
acceptance margins.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .rngstreams import block_plan, worker_count

__all__ = [
    "EstimateWithError",
    "KahanAccumulator",
    "block_sum",
    "map_blocks",
    "mc_mean",
    "snis_estimate",
    "snis_paired_diff",
    "effective_sample_size",
    "jackknife_se",
]


@dataclass(frozen=True)
class EstimateWithError:
    value: float
    std_error: float
    n_samples: int
    seed: int

    def __post_init__(self):
        if not math.isfinite(self.std_error) or self.std_error < 0:
            raise ValueError("std_error must be finite and nonnegative")
        if self.n_samples <= 0:
            raise ValueError("n_samples must be positive")

    def agrees_with(self, other: float, n_se: float = 3.0) -> bool:
        return abs(self.value - other) <= n_se * self.std_error


class KahanAccumulator:
    """Compensated (Kahan-Neumaier) scalar accumulator."""

    def __init__(self):
        self._sum = 0.0
        self._comp = 0.0

    def add(self, x: float) -> None:
        t = self._sum + x
        if abs(self._sum) >= abs(x):
            self._comp += (self._sum - t) + x
        else:
            self._comp += (x - t) + self._sum
        self._sum = t

    @property
    def total(self) -> float:
        return self._sum + self._comp


def block_sum(values: np.ndarray) -> float:
    """Error-compensated sum of one block (exact within double rounding)."""
    return float(math.fsum(np.asarray(values, dtype=np.float64).ravel()))


def map_blocks(fn, n_samples: int, threads: int | None = None) -> list:
    """Evaluate fn(block_index, block_length) over the block plan.

    Results are merged in block order, so the outcome is identical for any
    worker count.
    """
    plan = block_plan(n_samples)
    threads = worker_count() if threads is None else threads
    if threads <= 1 or len(plan) == 1:
        return [fn(b, m) for b, m in plan]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(fn, b, m) for b, m in plan]
        return [f.result() for f in futures]


def mc_mean(sample_fn, n_samples: int, seed: int) -> EstimateWithError:
    """Mean and standard error of a scalar statistic over blocked samples.

    sample_fn(block_index, block_length) must return a 1-d array of values.
    """
    sums = KahanAccumulator()
    sq_sums = KahanAccumulator()
    for chunk in map_blocks(sample_fn, n_samples):
        chunk = np.asarray(chunk, dtype=np.float64)
        sums.add(block_sum(chunk))
        sq_sums.add(block_sum(chunk * chunk))
    mean = sums.total / n_samples
    var = max(sq_sums.total / n_samples - mean * mean, 0.0)
    se = math.sqrt(var / n_samples)
    return EstimateWithError(value=mean, std_error=se, n_samples=n_samples, seed=seed)


def snis_estimate(weights: np.ndarray, values: np.ndarray,
                  n_samples: int, seed: int) -> EstimateWithError:
    """Self-normalized importance-sampling estimate with delta-method SE."""
    w = np.asarray(weights, dtype=np.float64)
    h = np.asarray(values, dtype=np.float64)
    total_w = block_sum(w)
    if total_w <= 0:
        raise ValueError("all importance weights vanished")
    est = block_sum(w * h) / total_w
    z = w * (h - est)
    se = math.sqrt(block_sum(z * z)) / total_w
    return EstimateWithError(value=est, std_error=se, n_samples=n_samples, seed=seed)


def snis_paired_diff(weights: np.ndarray, values_a: np.ndarray,
                     values_b: np.ndarray, n_samples: int,
                     seed: int) -> EstimateWithError:
    """SNIS estimate of E[a] - E[b] using the same weighted sample set.

    Pairing keeps the common-sample correlation, which is what makes the
    invariance check sharp.
    """
    w = np.asarray(weights, dtype=np.float64)
    d = np.asarray(values_a, dtype=np.float64) - np.asarray(values_b, dtype=np.float64)
    total_w = block_sum(w)
    if total_w <= 0:
        raise ValueError("all importance weights vanished")
    est = block_sum(w * d) / total_w
    z = w * (d - est)
    se = math.sqrt(block_sum(z * z)) / total_w
    return EstimateWithError(value=est, std_error=se, n_samples=n_samples, seed=seed)


def effective_sample_size(weights: np.ndarray) -> float:
    w = np.asarray(weights, dtype=np.float64)
    s1 = block_sum(w)
    s2 = block_sum(w * w)
    if s2 == 0.0:
        return 0.0
    return s1 * s1 / s2


def jackknife_se(weights: np.ndarray, values: np.ndarray,
                 n_groups: int = 50) -> float:
    """Delete-one-group jackknife SE of the SNIS ratio (cross-check)."""
    w = np.asarray(weights, dtype=np.float64)
    h = np.asarray(values, dtype=np.float64)
    n = w.size
    n_groups = min(n_groups, n)
    idx = np.arange(n) % n_groups
    sw = np.bincount(idx, weights=w, minlength=n_groups)
    swh = np.bincount(idx, weights=w * h, minlength=n_groups)
    tw, twh = sw.sum(), swh.sum()
    loo = (twh - swh) / (tw - sw)
    mean_loo = loo.mean()
    return float(math.sqrt((n_groups - 1) / n_groups
                           * np.sum((loo - mean_loo) ** 2)))
