"""Confidence intervals for the two reported metrics."""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

from scipy import stats

Z95 = 1.959964


def _z(confidence: float) -> float:
    if confidence == 0.95:
        return Z95
    return float(stats.norm.ppf(0.5 + confidence / 2))


def proportion_ci(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    The bounds are exact at the edges: ``lo == 0.0`` when ``successes == 0``
    and ``hi == 1.0`` when ``successes == trials``.
    """
    if trials < 1 or not 0 <= successes <= trials:
        raise ValueError(f"need 0 <= successes <= trials and trials >= 1, got {successes}/{trials}")
    z = _z(confidence)
    p = successes / trials
    z2n = z * z / trials
    denom = 1.0 + z2n
    center = (p + z2n / 2) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z2n / (4 * trials)) / denom
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return lo, hi


class MeanInterval(NamedTuple):
    mean: float
    lo: float
    hi: float
    degenerate: bool = False

    @property
    def halfwidth(self) -> float:
        return (self.hi - self.lo) / 2


def mean_ci(samples: Sequence[float], confidence: float = 0.95) -> MeanInterval:
    """Student-t interval for the mean; a single sample gives a degenerate
    zero-width interval."""
    n = len(samples)
    if n == 0:
        raise ValueError("mean_ci needs at least one sample")
    mean = math.fsum(samples) / n
    if n == 1:
        return MeanInterval(mean, mean, mean, True)
    var = math.fsum((x - mean) ** 2 for x in samples) / (n - 1)
    half = float(stats.t.ppf(0.5 + confidence / 2, n - 1)) * math.sqrt(var / n)
    return MeanInterval(mean, mean - half, mean + half)
