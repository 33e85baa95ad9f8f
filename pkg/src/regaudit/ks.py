"""Two-sample Kolmogorov-Smirnov distance (statistic only, no p-value)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .dataset import GroupPartition
from .metrics import MetricError


@dataclass(frozen=True)
class KsResult:
    statistic: float
    location: float


def ks_statistic(scores_a, scores_b) -> KsResult:
    """sup_x |F_a(x) - F_b(x)| over the empirical CDFs.

    Both ECDFs are right-continuous steps that only move at sample points, so
    checking the pooled sample points is exact.
    """
    a = np.sort(np.asarray(scores_a, dtype=float))
    b = np.sort(np.asarray(scores_b, dtype=float))
    if a.size == 0 or b.size == 0:
        raise MetricError("KS statistic needs two non-empty samples")
    xs = np.union1d(a, b)
    ca = np.searchsorted(a, xs, side="right").astype(np.int64)
    cb = np.searchsorted(b, xs, side="right").astype(np.int64)
    # |ca/na - cb/nb| on a common denominator, so the result rounds once
    gap = np.abs(ca * b.size - cb * a.size)
    i = int(np.argmax(gap))
    return KsResult(int(gap[i]) / (a.size * b.size), float(xs[i]))


def pairwise_ks(part: GroupPartition) -> list[tuple]:
    """(key_a, key_b, KsResult) for every unordered pair of groups, in key order."""
    return [(ka, kb, ks_statistic(part.groups[ka], part.groups[kb])) for ka, kb in combinations(part.groups, 2)]
