"""Disparate-impact curves over a proportion grid and their prior-weighted aggregates."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .dataset import GroupKey, GroupPartition, format_key
from .metrics import GroupMetricVector, MetricError, order_rank

GRID_SIZE = 100


@dataclass(frozen=True)
class ProportionGrid:
    """Proportions k/size for k = 0 .. size-1; 1.0 itself is never evaluated."""

    size: int = GRID_SIZE

    @property
    def points(self) -> np.ndarray:
        return np.arange(self.size) / self.size

    def __len__(self) -> int:
        return self.size

    def nearest(self, p: float) -> int:
        """Index of the grid point closest to p, ties going to the lower point."""
        if not 0.0 <= p <= 1.0:
            raise MetricError(f"proportion must be in [0, 1], got {p}")
        x = p * self.size
        lo = math.floor(x)
        k = lo if x - lo <= 0.5 else lo + 1
        return min(k, self.size - 1)


@dataclass(frozen=True)
class ProportionPrior:
    """Unnormalized non-negative mass per grid point.

    Aggregates divide by the total mass at the end, so rescaling the mass does
    not change results and the flat prior yields exact hundredths.
    """

    mass: np.ndarray
    kind: str = "custom"

    def __post_init__(self):
        mass = np.asarray(self.mass, dtype=float)
        if mass.ndim != 1 or mass.size == 0:
            raise MetricError("prior mass must be a non-empty vector")
        if not np.all(np.isfinite(mass)) or np.any(mass < 0):
            raise MetricError("prior mass must be finite and non-negative")
        if not mass.sum() > 0:
            raise MetricError("prior mass sums to zero")
        object.__setattr__(self, "mass", mass)

    @property
    def weights(self) -> np.ndarray:
        return self.mass / math.fsum(self.mass)

    @classmethod
    def flat(cls, grid: ProportionGrid = ProportionGrid()) -> "ProportionPrior":
        return cls(np.ones(grid.size), "flat")

    @classmethod
    def delta(cls, p: float, grid: ProportionGrid = ProportionGrid()) -> "ProportionPrior":
        mass = np.zeros(grid.size)
        mass[grid.nearest(p)] = 1.0
        return cls(mass, f"delta:{p:g}")

    @classmethod
    def custom(cls, weights: Sequence[float]) -> "ProportionPrior":
        return cls(np.asarray(weights, dtype=float), "custom")


@dataclass(frozen=True)
class DiCurve:
    grid: ProportionGrid
    values: Mapping[GroupKey, np.ndarray]
    reference: tuple[GroupKey, ...] = field(default=())

    def at(self, key, p: float) -> float:
        if not isinstance(key, tuple):
            key = (key,)
        return float(self.values[key][self.grid.nearest(p)])


def curve_from_rates(rates: Mapping[GroupKey, np.ndarray], grid: ProportionGrid) -> DiCurve:
    """Turn per-group selection-rate vectors (one entry per grid point) into a curve."""
    keys = list(rates)
    table = np.vstack([np.asarray(rates[k], dtype=float) for k in keys])
    best = np.argmax(table, axis=0)
    top = table[best, np.arange(table.shape[1])]
    if not np.all(top > 0):
        raise MetricError("some grid point has no selected candidate in any group")
    ratios = table / top
    return DiCurve(grid, {k: ratios[i] for i, k in enumerate(keys)}, tuple(keys[i] for i in best))


def di_curve(part: GroupPartition, grid: ProportionGrid = ProportionGrid()) -> DiCurve:
    pooled = np.sort(part.pooled())
    n = pooled.size
    ranks = [order_rank(p, n) for p in grid.points]
    thresholds = np.array([-np.inf if r == 0 else pooled[r - 1] for r in ranks])
    keys = list(part.groups)
    sizes = np.array([part.groups[k].size for k in keys], dtype=np.int64)
    counts = np.empty((len(keys), len(grid)), dtype=np.int64)
    for i, key in enumerate(keys):
        s = np.sort(part.groups[key])
        counts[i] = s.size - np.searchsorted(s, thresholds, side="left")

    # exact running argmax of c/n; first maximal group wins ties
    cols = np.arange(len(grid))
    best = np.zeros(len(grid), dtype=np.int64)
    for i in range(1, len(keys)):
        better = counts[i] * sizes[best] > counts[best, cols] * sizes[i]
        best[better] = i
    num = counts * sizes[best]
    den = counts[best, cols] * sizes[:, None]
    # int64 -> float64 is exact below 2**53, so the division rounds once
    ratios = num.astype(float) / den.astype(float)
    return DiCurve(grid, {k: ratios[i] for i, k in enumerate(keys)}, tuple(keys[i] for i in best))


def _check(curve: DiCurve, prior: ProportionPrior):
    if prior.mass.size != len(curve.grid):
        raise MetricError(f"prior has {prior.mass.size} weights but the curve has {len(curve.grid)} points")


def _weighted(mask_or_values: np.ndarray, prior: ProportionPrior) -> float:
    return math.fsum(mask_or_values * prior.mass) / math.fsum(prior.mass)


def _vector(name: str, values: dict) -> GroupMetricVector:
    ref = max(values, key=lambda k: values[k])
    return GroupMetricVector(name, values, ref)


def auc_di(curve: DiCurve, prior: ProportionPrior | None = None) -> GroupMetricVector:
    prior = prior or ProportionPrior.flat(curve.grid)
    _check(curve, prior)
    return _vector("AucDI", {k: _weighted(v, prior) for k, v in curve.values.items()})


def pf_di(curve: DiCurve, prior: ProportionPrior | None = None, fairness_bound: float = 0.8) -> GroupMetricVector:
    if not 0 < fairness_bound <= 1:
        raise MetricError(f"fairness bound must be in (0, 1], got {fairness_bound}")
    prior = prior or ProportionPrior.flat(curve.grid)
    _check(curve, prior)
    return _vector(
        "PfDI",
        {k: _weighted((v >= fairness_bound).astype(float), prior) for k, v in curve.values.items()},
    )


def curve_csv(curve: DiCurve) -> str:
    """CSV text with columns proportion, group, bin_di."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["proportion", "group", "bin_di"])
    points = curve.grid.points
    for key, vals in curve.values.items():
        for p, v in zip(points, vals):
            w.writerow([f"{p:.2f}", format_key(key), repr(float(v))])
    return buf.getvalue()
