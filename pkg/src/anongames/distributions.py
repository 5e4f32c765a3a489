"""Poisson binomial, Poisson and translated Poisson laws, plus the analytic
total-variation bounds used to control the rounding error."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import special

DEFAULT_TRUNCATION = 1e-12


@dataclass(frozen=True)
class DiscreteDistribution:
    """Finitely supported pmf on the integers ``offset, offset + 1, ...``.

    ``tail`` is the probability mass cut off beyond the last entry when the
    distribution is a truncation of an infinite-support law.
    """

    pmf: np.ndarray
    offset: int = 0
    tail: float = 0.0

    def __post_init__(self) -> None:
        pmf = np.asarray(self.pmf, dtype=float).copy()
        if pmf.ndim != 1 or pmf.size == 0:
            raise ValueError("pmf must be a non-empty vector")
        if pmf.min() < -1e-15:
            raise ValueError(f"negative probability {pmf.min()}")
        np.clip(pmf, 0.0, None, out=pmf)
        total = math.fsum(pmf) + self.tail
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {total}, not 1")
        pmf.setflags(write=False)
        object.__setattr__(self, "pmf", pmf)

    @property
    def support(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + self.pmf.size)

    def __getitem__(self, m: int) -> float:
        i = m - self.offset
        return float(self.pmf[i]) if 0 <= i < self.pmf.size else 0.0

    def mean(self) -> float:
        return float(self.support @ self.pmf)


def _check_probs(p: Sequence[float]) -> np.ndarray:
    p = np.asarray(p, dtype=float).reshape(-1)
    if np.any(~np.isfinite(p)) or np.any(p < 0.0) or np.any(p > 1.0):
        raise ValueError("probabilities must lie in [0, 1]")
    return p


def poisson_binomial_pmf(p: Sequence[float]) -> np.ndarray:
    """Exact pmf of a sum of independent Bernoulli(p_i) indicators.

    Standard O(n^2) convolution; each step is a convex combination of two
    shifted copies, so errors stay at a few ulps per entry.
    """
    p = _check_probs(p)
    pmf = np.zeros(p.size + 1)
    pmf[0] = 1.0
    for i, pi in enumerate(p):
        head = pmf[: i + 2]
        head[1:] = head[1:] * (1.0 - pi) + head[:-1] * pi
        head[0] *= 1.0 - pi
    return pmf


def poisson_binomial(p: Sequence[float]) -> DiscreteDistribution:
    return DiscreteDistribution(poisson_binomial_pmf(p))


def leave_one_out_poisson_binomial(p: Sequence[float]) -> np.ndarray:
    """Row ``j`` is the pmf of the sum of all indicators except the ``j``-th.

    Built from prefix and suffix pmfs so the whole table costs O(n^2) memory
    and n convolutions instead of n separate dynamic programs.
    """
    p = _check_probs(p)
    n = p.size
    out = np.zeros((n, max(n, 1)))
    if n == 0:
        return out
    prefix = [np.ones(1)]
    for pi in p[:-1]:
        prev = prefix[-1]
        nxt = np.zeros(prev.size + 1)
        nxt[:-1] = prev * (1.0 - pi)
        nxt[1:] += prev * pi
        prefix.append(nxt)
    suffix = np.ones(1)
    for j in range(n - 1, -1, -1):
        out[j, :n] = np.convolve(prefix[j], suffix)
        pj = p[j]
        nxt = np.zeros(suffix.size + 1)
        nxt[:-1] = suffix * (1.0 - pj)
        nxt[1:] += suffix * pj
        suffix = nxt
    return out


def tv_distance(a: DiscreteDistribution | np.ndarray, b: DiscreteDistribution | np.ndarray) -> float:
    """Total variation distance; supports are aligned by offset and zero-padded."""
    if not isinstance(a, DiscreteDistribution):
        a = DiscreteDistribution(a)
    if not isinstance(b, DiscreteDistribution):
        b = DiscreteDistribution(b)
    lo = min(a.offset, b.offset)
    hi = max(a.offset + a.pmf.size, b.offset + b.pmf.size)
    pa = np.zeros(hi - lo)
    pb = np.zeros(hi - lo)
    pa[a.offset - lo : a.offset - lo + a.pmf.size] = a.pmf
    pb[b.offset - lo : b.offset - lo + b.pmf.size] = b.pmf
    return min(0.5 * math.fsum(np.abs(pa - pb)), 1.0)


def tv_distance_arrays(pa: np.ndarray, pb: np.ndarray) -> float:
    """TV between two pmfs over ``0, 1, ...`` without validation (hot path)."""
    size = max(pa.size, pb.size)
    diff = np.zeros(size)
    diff[: pa.size] += pa
    diff[: pb.size] -= pb
    return 0.5 * float(np.abs(diff).sum())


def poisson_pmf(lam: float, truncation_eps: float = DEFAULT_TRUNCATION) -> DiscreteDistribution:
    """Poisson(lam) truncated at the first index whose upper tail is below ``truncation_eps``.

    Entries come from the ratio recurrence ``pmf[i+1] = pmf[i] * lam / (i+1)``
    run outward from the mode, which avoids underflow of ``exp(-lam)`` for
    large rates.
    """
    if not lam > 0:
        raise ValueError(f"Poisson rate must be positive, got {lam}")
    if not 0 < truncation_eps <= 1e-6:
        raise ValueError("truncation_eps must lie in (0, 1e-6]")
    # smallest m with P[X > m] < eps
    m = max(int(lam), 0)
    while special.pdtrc(m, lam) >= truncation_eps:
        m = m + max(1, int(math.sqrt(lam)))
    lo, hi = int(lam), m
    while lo < hi:
        mid = (lo + hi) // 2
        if special.pdtrc(mid, lam) < truncation_eps:
            hi = mid
        else:
            lo = mid + 1
    m = lo
    mode = min(int(lam), m)
    pmf = np.zeros(m + 1)
    pmf[mode] = math.exp(-lam + mode * math.log(lam) - math.lgamma(mode + 1))
    for i in range(mode, m):
        pmf[i + 1] = pmf[i] * lam / (i + 1)
    for i in range(mode, 0, -1):
        pmf[i - 1] = pmf[i] * i / lam
    return DiscreteDistribution(pmf, 0, float(special.pdtrc(m, lam)))


@dataclass(frozen=True)
class TranslatedPoissonParams:
    mu: float
    sigma2: float

    def __post_init__(self) -> None:
        if not self.sigma2 > 0:
            raise ValueError(f"variance must be positive, got {self.sigma2}")

    @property
    def shift(self) -> int:
        return math.floor(self.mu - self.sigma2)

    @property
    def rate(self) -> float:
        return self.sigma2 + (self.mu - self.sigma2 - self.shift)


def translated_poisson_pmf(
    tp: TranslatedPoissonParams, truncation_eps: float = DEFAULT_TRUNCATION
) -> DiscreteDistribution:
    base = poisson_pmf(tp.rate, truncation_eps)
    return DiscreteDistribution(base.pmf, tp.shift, base.tail)


def moments(p: Sequence[float]) -> TranslatedPoissonParams:
    """Mean and variance of a Poisson binomial law."""
    p = _check_probs(p)
    return TranslatedPoissonParams(math.fsum(p), math.fsum(p * (1.0 - p)))


def poisson_approx_bound(p: Sequence[float]) -> float:
    """``sum p_i^2 / sum p_i``: TV bound between a Poisson binomial and Poisson(sum p_i)."""
    p = _check_probs(p)
    total = math.fsum(p)
    if total <= 0:
        raise ValueError("need at least one positive probability")
    return math.fsum(p * p) / total


def translated_poisson_approx_bound(p: Sequence[float]) -> float:
    """``(sqrt(sum p^3 (1-p)) + 2) / sum p (1-p)``: TV bound to the matching translated Poisson."""
    p = _check_probs(p)
    var = math.fsum(p * (1.0 - p))
    if var <= 0:
        raise ValueError("Poisson binomial has zero variance")
    return (math.sqrt(math.fsum(p**3 * (1.0 - p))) + 2.0) / var


def medium_range_ratio_bound(u: float, count: int) -> float:
    """Upper bound on ``sqrt(sum p^3 (1-p)) / sum p (1-p)`` when every p lies in [u, 1/2]."""
    if not 0 < u < 0.5:
        raise ValueError("u must lie in (0, 1/2)")
    if count < 1:
        raise ValueError("need at least one probability")
    num = 1 + 2 * u + 4 * u**2 - 8 * u**3
    den = math.sqrt(16 * count * u * (1 - u - 4 * u**2 + 4 * u**3))
    return num / den


def poisson_tv_bound(lam1: float, lam2: float) -> float:
    if not (lam1 > 0 and lam2 > 0):
        raise ValueError("Poisson rates must be positive")
    d = abs(lam1 - lam2)
    return math.exp(d) - math.exp(-d)


def _tp_bound_ordered(a: TranslatedPoissonParams, b: TranslatedPoissonParams) -> float:
    return abs(a.mu - b.mu) / math.sqrt(a.sigma2) + (abs(a.sigma2 - b.sigma2) + 1.0) / a.sigma2


def tp_tv_bound(a: TranslatedPoissonParams, b: TranslatedPoissonParams) -> float:
    """TV bound between two translated Poissons.

    The bound is stated for the pair ordered by shift; with equal shifts both
    orderings are valid and the larger value is returned.
    """
    if a.shift > b.shift:
        a, b = b, a
    if a.shift == b.shift:
        return max(_tp_bound_ordered(a, b), _tp_bound_ordered(b, a))
    return _tp_bound_ordered(a, b)
