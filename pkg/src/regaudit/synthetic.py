"""Gaussian-mixture score distributions for the three counterexamples.

Each example pits two groups ``a`` and ``b`` against each other:

1. ``N(50, 10-d)`` vs ``N(50, 10+d)``                        d in 0..9
2. ``N(50, s)`` vs ``1/2 N(20,10) + 1/2 N(80,10)``            s in 10..1
3. ``1/2 N(30,10) + 1/2 N(70,s)`` vs ``1/2 N(30,10) + 1/2 N(80,s)``  s in 10..1

Curves can be evaluated exactly from the mixture CDFs (``analytic_curve``)
or estimated from a seeded sample (``sample`` + the empirical metrics).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .curves import DiCurve, ProportionGrid, ProportionPrior, auc_di, curve_from_rates, di_curve, pf_di
from .dataset import GroupPartition
from .metrics import GroupMetricVector, MetricError, mean_di, med_di, ratio_to_max

SQRT2 = math.sqrt(2.0)
EXAMPLE_RANGES = {
    1: tuple(float(d) for d in range(0, 10)),
    2: tuple(float(s) for s in range(10, 0, -1)),
    3: tuple(float(s) for s in range(10, 0, -1)),
}
METRICS = {"mean": "MeanDI", "median": "MedDI", "auc": "AucDI", "pf": "PfDI"}


@dataclass(frozen=True)
class GaussianComponent:
    mean: float
    std_dev: float
    weight: float = 1.0

    def __post_init__(self):
        if not self.std_dev > 0:
            raise MetricError(f"std_dev must be positive, got {self.std_dev}")
        if not 0 < self.weight <= 1:
            raise MetricError(f"component weight must be in (0, 1], got {self.weight}")

    def cdf(self, x: float) -> float:
        return 0.5 * math.erfc(-(x - self.mean) / (self.std_dev * SQRT2))

    def sf(self, x: float) -> float:
        return 0.5 * math.erfc((x - self.mean) / (self.std_dev * SQRT2))


@dataclass(frozen=True)
class GroupDistribution:
    components: tuple[GaussianComponent, ...]

    def __post_init__(self):
        if not self.components:
            raise MetricError("a distribution needs at least one component")
        total = math.fsum(c.weight for c in self.components)
        if abs(total - 1.0) > 1e-12:
            raise MetricError(f"component weights sum to {total}, expected 1")

    @classmethod
    def normal(cls, mean: float, std_dev: float) -> "GroupDistribution":
        return cls((GaussianComponent(mean, std_dev),))

    @classmethod
    def bimodal(cls, first: tuple[float, float], second: tuple[float, float]) -> "GroupDistribution":
        return cls((GaussianComponent(*first, 0.5), GaussianComponent(*second, 0.5)))

    @property
    def mean(self) -> float:
        return math.fsum(c.weight * c.mean for c in self.components)

    def cdf(self, x: float) -> float:
        return math.fsum(c.weight * c.cdf(x) for c in self.components)

    def sf(self, x: float) -> float:
        return math.fsum(c.weight * c.sf(x) for c in self.components)


@dataclass(frozen=True)
class SyntheticSpec:
    groups: Mapping[str, GroupDistribution]
    proportions: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.groups) < 2:
            raise MetricError("a synthetic spec needs at least two groups")
        if not self.proportions:
            share = 1.0 / len(self.groups)
            object.__setattr__(self, "proportions", {g: share for g in self.groups})
        if set(self.proportions) != set(self.groups):
            raise MetricError("proportions must cover exactly the spec's groups")
        if abs(math.fsum(self.proportions.values()) - 1.0) > 1e-12:
            raise MetricError("group proportions must sum to 1")

    def pooled_cdf(self, x: float) -> float:
        return math.fsum(self.proportions[g] * d.cdf(x) for g, d in self.groups.items())

    def bracket(self) -> tuple[float, float]:
        comps = [c for d in self.groups.values() for c in d.components]
        spread = 10 * max(c.std_dev for c in comps)
        return min(c.mean for c in comps) - spread, max(c.mean for c in comps) + spread


def example_spec(example_id: int, parameter: float) -> SyntheticSpec:
    parameter = float(parameter)
    if example_id == 1:
        if not 0 <= parameter < 10:
            raise MetricError(f"example 1 needs 0 <= delta < 10, got {parameter}")
        a = GroupDistribution.normal(50, 10 - parameter)
        b = GroupDistribution.normal(50, 10 + parameter)
    elif example_id == 2:
        if not parameter > 0:
            raise MetricError(f"example 2 needs sigma > 0, got {parameter}")
        a = GroupDistribution.normal(50, parameter)
        b = GroupDistribution.bimodal((20, 10), (80, 10))
    elif example_id == 3:
        if not parameter > 0:
            raise MetricError(f"example 3 needs sigma > 0, got {parameter}")
        a = GroupDistribution.bimodal((30, 10), (70, parameter))
        b = GroupDistribution.bimodal((30, 10), (80, parameter))
    else:
        raise MetricError(f"unknown example {example_id!r}; expected 1, 2 or 3")
    return SyntheticSpec({"a": a, "b": b})


def sample(spec: SyntheticSpec, n_per_group: int, seed: int) -> GroupPartition:
    """Draw scores group by group from one seeded generator.

    With unequal proportions the group sizes are scaled so that the average
    size is still ``n_per_group``.
    """
    if n_per_group < 1:
        raise MetricError("n_per_group must be >= 1")
    rng = np.random.default_rng(seed)
    k = len(spec.groups)
    groups = {}
    for name in sorted(spec.groups):
        dist = spec.groups[name]
        n = max(1, round(n_per_group * k * spec.proportions[name]))
        weights = np.array([c.weight for c in dist.components])
        which = rng.choice(len(weights), size=n, p=weights / weights.sum())
        means = np.array([c.mean for c in dist.components])[which]
        stds = np.array([c.std_dev for c in dist.components])[which]
        groups[name] = rng.normal(means, stds)
    return GroupPartition.from_groups(groups)


def pooled_quantile_analytic(spec: SyntheticSpec, p: float, tol: float = 1e-9) -> float:
    """Solve pooled_cdf(x) = p by bisection."""
    lo, hi = spec.bracket()
    f_lo, f_hi = spec.pooled_cdf(lo), spec.pooled_cdf(hi)
    if not f_lo <= p <= f_hi:
        raise MetricError(f"bracket [{lo}, {hi}] does not contain the {p} quantile")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if spec.pooled_cdf(mid) < p:
            lo = mid
        else:
            hi = mid
    if abs(spec.pooled_cdf(hi) - p) > tol:
        raise MetricError(f"bisection for the {p} quantile did not converge")
    return hi


def analytic_curve(spec: SyntheticSpec, grid: ProportionGrid = ProportionGrid()) -> DiCurve:
    names = sorted(spec.groups)
    rates = {(g,): np.empty(len(grid)) for g in names}
    for i, p in enumerate(grid.points):
        q = -math.inf if p == 0 else pooled_quantile_analytic(spec, p)
        for g in names:
            rates[(g,)][i] = 1.0 if q == -math.inf else spec.groups[g].sf(q)
    return curve_from_rates(rates, grid)


def analytic_metrics(spec: SyntheticSpec, prior: ProportionPrior | None = None,
                     fairness_bound: float = 0.8) -> dict[str, GroupMetricVector]:
    curve = analytic_curve(spec)
    means = {(g,): spec.groups[g].mean for g in sorted(spec.groups)}
    mid = curve.grid.nearest(0.5)
    med = {k: float(v[mid]) for k, v in curve.values.items()}
    return {
        "MeanDI": ratio_to_max("MeanDI", means),
        "MedDI": GroupMetricVector("MedDI", med, curve.reference[mid]),
        "AucDI": auc_di(curve, prior),
        "PfDI": pf_di(curve, prior, fairness_bound),
    }


def sampled_metrics(spec: SyntheticSpec, n_per_group: int, seed: int, prior: ProportionPrior | None = None,
                    fairness_bound: float = 0.8) -> dict[str, GroupMetricVector]:
    part = sample(spec, n_per_group, seed)
    curve = di_curve(part)
    return {
        "MeanDI": mean_di(part),
        "MedDI": med_di(part),
        "AucDI": auc_di(curve, prior),
        "PfDI": pf_di(curve, prior, fairness_bound),
    }


def sweep(example_id: int, parameters: Iterable[float] | None = None, metrics: Sequence[str] = tuple(METRICS),
          mode: str = "analytic", n_per_group: int = 100_000, seed: int = 0,
          prior: ProportionPrior | None = None, fairness_bound: float = 0.8) -> list[tuple[float, str, str, float]]:
    """Rows of (parameter, group, metric, value), sorted by parameter.

    ``metrics`` takes the short names mean/median/auc/pf. Sampled runs reuse
    the same seed at every parameter value.
    """
    if example_id not in EXAMPLE_RANGES:
        raise MetricError(f"unknown example {example_id!r}; expected 1, 2 or 3")
    unknown = [m for m in metrics if m not in METRICS]
    if unknown:
        raise MetricError(f"unknown sweep metrics {unknown}; choose from {list(METRICS)}")
    if mode not in ("analytic", "sampled"):
        raise MetricError(f"mode must be 'analytic' or 'sampled', got {mode!r}")
    params = sorted(EXAMPLE_RANGES[example_id] if parameters is None else parameters)

    rows = []
    for param in params:
        spec = example_spec(example_id, param)
        if mode == "analytic":
            result = analytic_metrics(spec, prior, fairness_bound)
        else:
            result = sampled_metrics(spec, n_per_group, seed, prior, fairness_bound)
        for group in sorted(spec.groups):
            for m in metrics:
                rows.append((float(param), group, METRICS[m], result[METRICS[m]][group]))
    return rows
