"""Selection rates, pooled quantiles and pointwise disparate-impact ratios.

Thresholding uses the lower empirical quantile: for proportion p of a pooled
sample of size n the threshold is the ceil(p*n)-th smallest score, and a score
is selected when it is >= the threshold. p = 0 selects everyone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .dataset import GroupKey, GroupPartition

ALL_PASS = -math.inf


class MetricError(ValueError):
    pass


@dataclass(frozen=True)
class QuantileThreshold:
    proportion: float
    value: float  # ALL_PASS when proportion == 0

    @property
    def selects_all(self) -> bool:
        return self.value == ALL_PASS


@dataclass(frozen=True)
class GroupMetricVector:
    metric_name: str
    values: Mapping[GroupKey, float]
    reference_group: GroupKey

    def __getitem__(self, key):
        if not isinstance(key, tuple):
            key = (key,)
        return self.values[key]


def order_rank(p: float, n: int) -> int:
    """1-based rank ceil(p*n); 0 means the all-pass threshold.

    p*n is rounded to 9 decimals first so that grid proportions like 0.07
    don't pick up a spurious extra rank from binary floating point.
    """
    if not 0.0 <= p <= 1.0:
        raise MetricError(f"proportion must be in [0, 1], got {p}")
    if p == 0.0:
        return 0
    return max(1, math.ceil(round(p * n, 9)))


def pooled_quantile(scores, p: float) -> QuantileThreshold:
    scores = np.asarray(scores, dtype=float)
    if scores.size == 0:
        raise MetricError("cannot take a quantile of an empty sample")
    rank = order_rank(p, scores.size)
    if rank == 0:
        return QuantileThreshold(p, ALL_PASS)
    return QuantileThreshold(p, float(np.partition(scores, rank - 1)[rank - 1]))


def selection_rate(group_scores, threshold) -> float:
    group_scores = np.asarray(group_scores, dtype=float)
    if group_scores.size == 0:
        raise MetricError("selection rate of an empty group")
    return selection_count(group_scores, threshold) / group_scores.size


def selection_count(group_scores, threshold) -> int:
    """Number of scores >= threshold (ties are selected)."""
    group_scores = np.asarray(group_scores, dtype=float)
    t = threshold.value if isinstance(threshold, QuantileThreshold) else float(threshold)
    if t == ALL_PASS:
        return int(group_scores.size)
    return int(np.count_nonzero(group_scores >= t))


def ratio_of_counts(name: str, counts: Mapping[GroupKey, tuple[int, int]]) -> GroupMetricVector:
    """DI from (selected, size) pairs.

    Rates are compared and divided as exact fractions, so each ratio is the
    correctly rounded value of c_i*n_max / (c_max*n_i). An exact 4/5 therefore
    lands on 0.8 and not one ulp below it.
    """
    keys = list(counts)
    best = keys[0]
    for k in keys[1:]:
        c, n = counts[k]
        cb, nb = counts[best]
        if c * nb > cb * n:
            best = k
    cb, nb = counts[best]
    if cb == 0:
        raise MetricError(f"{name}: no group has a selected candidate")
    return GroupMetricVector(name, {k: (c * nb) / (cb * n) for k, (c, n) in counts.items()}, best)


def ratio_to_max(name: str, per_group: Mapping[GroupKey, float]) -> GroupMetricVector:
    """Divide every group's quantity by the largest one."""
    keys = list(per_group)
    raw = np.array([per_group[k] for k in keys], dtype=float)
    best = int(np.argmax(raw))
    top = raw[best]
    if not top > 0:
        raise MetricError(f"{name}: largest group value is {top}, ratio undefined")
    values = {k: float(v / top) for k, v in zip(keys, raw)}
    return GroupMetricVector(name, values, keys[best])


def mean_di(part: GroupPartition) -> GroupMetricVector:
    means = {k: float(np.mean(v)) for k, v in part.groups.items()}
    if min(means.values()) < 0:
        raise MetricError("MeanDI needs non-negative group means; shift scores to a positive scale")
    return ratio_to_max("MeanDI", means)


def bin_di_at(part: GroupPartition, p: float, name: str | None = None) -> GroupMetricVector:
    if p >= 1.0:
        raise MetricError("BinDI is undefined at p = 1 (no candidate is selected)")
    t = pooled_quantile(part.pooled(), p)
    counts = {k: (selection_count(v, t), v.size) for k, v in part.groups.items()}
    return ratio_of_counts(name or f"BinDI({p:g})", counts)


def med_di(part: GroupPartition) -> GroupMetricVector:
    return bin_di_at(part, 0.5, name="MedDI")


def thresh_di(part: GroupPartition, z: float) -> GroupMetricVector:
    counts = {k: (selection_count(v, z), v.size) for k, v in part.groups.items()}
    if not any(c for c, _ in counts.values()):
        raise MetricError(f"no score reaches the threshold {z}")
    return ratio_of_counts("ThreshDI", counts)
