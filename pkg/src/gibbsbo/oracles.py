"""Closed-form and brute-force ground truth for the Monte Carlo campaigns.

Everything here reduces Gaussian moments to pairings.  A single generic
pairing kernel (complex factors with conjugation tracking) is audited once
and reused; the large-N oracles use the sums that kernel produces, and the
tests compare them against the kernel on small instances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

__all__ = [
    "RateTable",
    "complex_gaussian_moment",
    "isserlis_moment",
    "exact_g_diff_second_moment",
    "exact_f_diff_second_moment",
    "exact_pi_square_expectation",
    "exact_picard_second_moment",
    "calculus_sum_check",
    "resonance_denominator",
]

MAX_WICK_FACTORS = 8


@dataclass(frozen=True)
class RateTable:
    """Rows of (N, M, exact second moment, MC estimate, MC standard error)."""

    rows: tuple

    def __post_init__(self):
        for n, m, exact, _mc, _se in self.rows:
            if not m > n:
                raise ValueError("rows need M > N")
            if not exact > 0:
                raise ValueError("exact second moments must be positive")


def complex_gaussian_moment(factors) -> float:
    """Expectation of a product of standard complex Gaussians by pairings.

    Each factor is (level, conj); distinct levels are independent, and a
    pair contributes 1 exactly when it joins one conjugated and one
    unconjugated factor of the same level.
    """
    factors = list(factors)
    if len(factors) > MAX_WICK_FACTORS:
        raise ValueError(f"pairing enumeration capped at {MAX_WICK_FACTORS} factors")
    if len(factors) % 2 == 1:
        return 0.0

    def rec(items):
        if not items:
            return 1.0
        (k0, c0), rest = items[0], items[1:]
        total = 0.0
        for j, (k1, c1) in enumerate(rest):
            if k1 == k0 and c1 != c0:
                total += rec(rest[:j] + rest[j + 1:])
        return total

    return rec(factors)


def isserlis_moment(cov: np.ndarray, indices) -> float:
    """Moment E[x_{i1}...x_{im}] of a real centered Gaussian vector."""
    indices = list(indices)
    if len(indices) > MAX_WICK_FACTORS:
        raise ValueError(f"pairing enumeration capped at {MAX_WICK_FACTORS} factors")
    if len(indices) % 2 == 1:
        return 0.0
    cov = np.asarray(cov, dtype=np.float64)

    def rec(items):
        if not items:
            return 1.0
        i0, rest = items[0], items[1:]
        total = 0.0
        for j, i1 in enumerate(rest):
            total += cov[i0, i1] * rec(rest[:j] + rest[j + 1:])
        return total

    return rec(indices)


def exact_g_diff_second_moment(n_low: int, n_high: int) -> float:
    """E |g_M(phi) - g_N(phi)|^2 = sum_{N < n <= M} 1/n^2.

    The telescoped L2-mass difference is sum (|g_n|^2 - 1)/n over the new
    modes, and Var(|g_n|^2) = 1 for a standard complex Gaussian.
    """
    if not n_high > n_low >= 1:
        raise ValueError("need M > N >= 1")
    return float(math.fsum(1.0 / (n * n) for n in range(n_low + 1, n_high + 1)))


def _signed_factors(triple):
    """Gaussian factors of the product g_{n1} g_{n2} g_{n3} (g_{-n} = conj g_n)."""
    return [(abs(n), n < 0) for n in triple]


def _new_triples(n_low: int, n_high: int):
    """Unordered zero-sum triples in the band <= M with a mode above N.

    Yields (triple, multiplicity) with the triple sorted and multiplicity
    the number of ordered arrangements.
    """
    for n1 in range(-n_high, n_high + 1):
        if n1 == 0:
            continue
        for n2 in range(n1, n_high + 1):
            if n2 == 0:
                continue
            n3 = -n1 - n2
            if n3 < n2 or n3 == 0 or n3 > n_high:
                continue
            if max(abs(n1), abs(n2), abs(n3)) <= n_low:
                continue
            trip = (n1, n2, n3)
            if n1 == n2 == n3:
                mult = 1
            elif n1 == n2 or n2 == n3 or n1 == n3:
                mult = 3
            else:
                mult = 6
            yield trip, mult


def exact_f_diff_second_moment(n_low: int, n_high: int,
                               cost_limit: int = 128) -> float:
    """E |f_M(phi) - f_N(phi)|^2 by mechanical Wick pairing.

    f_K(phi) = 2*pi * sum over zero-sum triples of c_{n1} c_{n2} c_{n3} with
    c_n = g_n / (2*sqrt(pi*|n|)); the difference keeps triples reaching
    above N.  Triples are bucketed by the multiset of |n_i| (sixth moments
    across different buckets vanish level by level), and every surviving
    sixth moment is enumerated by the pairing kernel.
    """
    if not n_high > n_low >= 1:
        raise ValueError("need M > N >= 1")
    if n_high > cost_limit:
        raise ValueError(f"M={n_high} exceeds the O(M^2) cost guard {cost_limit}")
    buckets: dict[tuple, list] = {}
    for trip, mult in _new_triples(n_low, n_high):
        weight = (2.0 * np.pi * mult
                  / math.prod(2.0 * math.sqrt(np.pi * abs(n)) for n in trip))
        key = tuple(sorted(abs(n) for n in trip))
        buckets.setdefault(key, []).append((trip, weight))
    total = 0.0
    for entries in buckets.values():
        for trip_a, w_a in entries:
            fa = _signed_factors(trip_a)
            for trip_b, w_b in entries:
                moment = complex_gaussian_moment(fa + _signed_factors(trip_b))
                if moment:
                    total += w_a * w_b * moment
    return total


def _exact_f_diff_bruteforce(n_low: int, n_high: int) -> float:
    """Unbucketed O(T^2) enumeration; validates the bucketing."""
    triples = [(t, m) for t, m in _new_triples(n_low, n_high)]
    total = 0.0
    for trip_a, mult_a in triples:
        w_a = (2.0 * np.pi * mult_a
               / math.prod(2.0 * math.sqrt(np.pi * abs(n)) for n in trip_a))
        for trip_b, mult_b in triples:
            w_b = (2.0 * np.pi * mult_b
                   / math.prod(2.0 * math.sqrt(np.pi * abs(n)) for n in trip_b))
            total += w_a * w_b * complex_gaussian_moment(
                _signed_factors(trip_a) + _signed_factors(trip_b))
    return total


def _pair_second_moment_sum(n_modes: int, n: int, kernel) -> float:
    """2 * sum over ordered (n1, n2=n-n1) in the band of |K|^2 v_{n1} v_{n2}.

    This is the Wick reduction of E|sum K(n1,n2) c_{n1} c_{n2}|^2 for a
    kernel symmetric in (n1, n2): only the two "straight" pairings survive
    (E c_a c_b = 0 for a+b = n != 0), each contributing v v = product of
    coefficient variances 1/(4*pi*|n_i|).
    """
    n1 = np.arange(-n_modes, n_modes + 1)
    n1 = n1[n1 != 0]
    n2 = n - n1
    valid = (n2 != 0) & (np.abs(n2) <= n_modes)
    n1, n2 = n1[valid], n2[valid]
    if n1.size == 0:
        return 0.0
    v = 1.0 / (16.0 * np.pi ** 2 * np.abs(n1) * np.abs(n2))
    k = kernel(n1, n2)
    return float(2.0 * np.sum(np.abs(k) ** 2 * v))


def exact_pi_square_expectation(n_modes: int, s: float) -> float:
    """E ||Pi(phi_N^2)||^2_{H^s}: exact fourth-moment double sum."""
    if n_modes > 512:
        raise ValueError("cost guard: N <= 512")
    total = 0.0
    ones = lambda n1, n2: np.ones_like(n1, dtype=np.float64)
    for n in range(1, 2 * n_modes + 1):
        contrib = _pair_second_moment_sum(n_modes, n, ones)
        # modes +-n contribute equally
        total += 2.0 * (1.0 + n * n) ** s * contrib
    return float(2.0 * np.pi * total)


def resonance_denominator(n1: np.ndarray, n2: np.ndarray) -> np.ndarray:
    """Delta = sigma(n1) + sigma(n2) - sigma(n1+n2) with sigma(n) = -n|n|."""
    n = n1 + n2
    return (-n1 * np.abs(n1) - n2 * np.abs(n2) + n * np.abs(n)).astype(np.float64)


def exact_picard_second_moment(n_modes: int, t: float, s: float) -> float:
    """E ||second Picard iterate||^2_{H^s} at time t, exact via Wick.

    The iterate has coefficients -n e^{it sigma(n)} * sum of
    phi_{n1} phi_{n-n1} (e^{it Delta}-1)/Delta; the divided difference has
    squared magnitude (2 sin(t Delta / 2) / Delta)^2 (Delta never vanishes
    on admissible pairs by the resonance gap).
    """
    if n_modes > 512:
        raise ValueError("cost guard: N <= 512")
    if t == 0.0:
        return 0.0

    def kernel(n1, n2):
        delta = resonance_denominator(n1, n2)
        return 2.0 * np.sin(t * delta / 2.0) / delta

    total = 0.0
    for n in range(1, 2 * n_modes + 1):
        contrib = _pair_second_moment_sum(n_modes, n, kernel)
        total += 2.0 * (1.0 + n * n) ** s * (n * n) * contrib
    return float(2.0 * np.pi * total)


def _scaled_sum_elem1(n_values: np.ndarray, eps: float,
                      window: int) -> tuple[np.ndarray, float]:
    """sum_{n1 != 0, n} 1/(|n1| |n-n1|) scaled by (1+|n|)^{1-eps}."""
    w = int(window)
    k = np.arange(-w, w + 1, dtype=np.float64)
    a = np.zeros_like(k)
    nz = k != 0
    a[nz] = 1.0 / np.abs(k[nz])
    conv = fftconvolve(a, a, mode="same")  # conv[w+n] = sum_k a(k) a(n-k)
    out = np.empty(n_values.size)
    for i, n in enumerate(n_values):
        out[i] = conv[w + n] * (1.0 + abs(n)) ** (1.0 - eps)
    tail = 4.0 / w  # integral comparison: 2 * sum_{|k|>w} k^-2 per side
    return out, tail


def _scaled_sum_elem2(alpha_values: np.ndarray, eps: float,
                      window: int) -> tuple[np.ndarray, float]:
    w = int(window)
    k = np.arange(-w, w + 1, dtype=np.float64)
    nz = k != 0
    b = np.zeros_like(k)
    c = np.zeros_like(k)
    b[nz] = 1.0 / np.abs(k[nz]) ** (1.5 - eps)
    c[nz] = 1.0 / np.abs(k[nz]) ** (0.5 - eps)
    conv = fftconvolve(b, c, mode="same")
    out = np.empty(alpha_values.size)
    for i, a in enumerate(alpha_values):
        out[i] = conv[w + a] * (1.0 + abs(a)) ** (0.5 - eps)
    tail = 2.0 * w ** (-1.0 + 2.0 * eps) / (1.0 - 2.0 * eps)
    return out, tail


def calculus_sum_check(kind: str, eps: float, n_range,
                       window: int = 1 << 22) -> tuple[float, float]:
    """Max of the scaled lemma sum over n_range plus the truncation bound.

    A bounded, non-growing maximum over a growing range numerically
    witnesses the corresponding calculus lemma.
    """
    n_values = np.asarray(list(n_range), dtype=np.int64)
    if kind == "elem1":
        if not 0 < eps < 1:
            raise ValueError("elem1 needs 0 < eps < 1")
        vals, tail = _scaled_sum_elem1(n_values, eps, window)
    elif kind == "elem2":
        if not 0 < eps < 0.25:
            raise ValueError("elem2 needs 0 < eps < 1/4")
        vals, tail = _scaled_sum_elem2(n_values, eps, window)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return float(np.max(vals)), tail
