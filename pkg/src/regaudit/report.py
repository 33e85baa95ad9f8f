"""Audit assembly, four-fifths flagging and serialization (json / csv / text)."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Sequence

from .curves import ProportionPrior, auc_di, di_curve, pf_di
from .dataset import GroupKey, ScoreDataset, format_key, partition
from .ks import pairwise_ks
from .metrics import GroupMetricVector, MetricError, mean_di, med_di, thresh_di

METRIC_CHOICES = ("mean", "median", "thresh", "auc", "pf", "ks")
FORMATS = ("json", "csv", "text")


def flag(values: GroupMetricVector, fairness_bound: float = 0.8) -> dict[GroupKey, bool]:
    """True for every group strictly below the bound (exactly 0.8 passes)."""
    return {k: v < fairness_bound for k, v in values.values.items()}


@dataclass(frozen=True)
class MetricRow:
    attribute: str
    vector: GroupMetricVector
    flags: dict[GroupKey, bool]


@dataclass(frozen=True)
class KsRow:
    attribute: str
    group_a: GroupKey
    group_b: GroupKey
    statistic: float
    location: float


@dataclass(frozen=True)
class AuditReport:
    summary: dict
    config: dict
    metrics: tuple[MetricRow, ...]
    ks: tuple[KsRow, ...] | None = None
    attribute_specs: tuple[tuple[str, ...], ...] = field(default=())

    @property
    def any_flagged(self) -> bool:
        return any(any(r.flags.values()) for r in self.metrics)


def audit(ds: ScoreDataset, attribute_specs: Sequence[Sequence[str]], metrics: Sequence[str] = ("mean", "median", "auc", "pf"),
          threshold: float | None = None, prior: ProportionPrior | None = None, fairness_bound: float = 0.8,
          min_group_size: int = 1) -> AuditReport:
    """Compute the selected metrics for each attribute spec (one or more attribute names each)."""
    bad = [m for m in metrics if m not in METRIC_CHOICES]
    if bad or not metrics:
        raise MetricError(f"metrics must be a non-empty subset of {list(METRIC_CHOICES)}, got {list(metrics)}")
    if ("thresh" in metrics) != (threshold is not None):
        raise MetricError("a score threshold is required exactly when the thresh metric is selected")
    if not 0 < fairness_bound <= 1:
        raise MetricError(f"fairness bound must be in (0, 1], got {fairness_bound}")
    prior = prior or ProportionPrior.flat()

    rows, ks_rows, excluded = [], [], []
    for spec in attribute_specs:
        part = partition(ds, spec, min_group_size)
        label = " & ".join(spec)
        for key, count in part.excluded.items():
            excluded.append({"attribute": label, "group": format_key(key), "count": count,
                             "reason": f"fewer than {min_group_size} members"})
        vectors = []
        if "mean" in metrics:
            vectors.append(mean_di(part))
        if "median" in metrics:
            vectors.append(med_di(part))
        if "thresh" in metrics:
            vectors.append(thresh_di(part, threshold))
        if "auc" in metrics or "pf" in metrics:
            curve = di_curve(part)
            if "auc" in metrics:
                vectors.append(auc_di(curve, prior))
            if "pf" in metrics:
                vectors.append(pf_di(curve, prior, fairness_bound))
        rows.extend(MetricRow(label, v, flag(v, fairness_bound)) for v in vectors)
        if "ks" in metrics:
            ks_rows.extend(KsRow(label, a, b, r.statistic, r.location) for a, b, r in pairwise_ks(part))

    summary = {"n_records": len(ds), "dropped_count": ds.dropped_count, "excluded": excluded}
    config = {
        "grid_size": len(prior.mass),
        "prior": prior.kind,
        "fairness_bound": fairness_bound,
        "threshold": threshold,
        "min_group_size": min_group_size,
        "metrics": list(metrics),
    }
    return AuditReport(summary, config, tuple(rows), tuple(ks_rows) if "ks" in metrics else None,
                       tuple(tuple(s) for s in attribute_specs))


def to_dict(report: AuditReport) -> dict:
    out = {
        "summary": report.summary,
        "config": report.config,
        "metrics": [
            {
                "name": r.vector.metric_name,
                "attribute": r.attribute,
                "groups": {format_key(k): {"value": v, "flag": r.flags[k]} for k, v in r.vector.values.items()},
                "reference_group": format_key(r.vector.reference_group),
            }
            for r in report.metrics
        ],
    }
    if report.ks is not None:
        out["ks"] = [
            {"attribute": r.attribute, "group_a": format_key(r.group_a), "group_b": format_key(r.group_b),
             "statistic": r.statistic, "location": r.location}
            for r in report.ks
        ]
    return out


def _text(report: AuditReport) -> str:
    lines = [
        f"records: {report.summary['n_records']}  dropped: {report.summary['dropped_count']}  "
        f"bound: {report.config['fairness_bound']}  prior: {report.config['prior']}",
    ]
    by_attr: dict[str, list[MetricRow]] = {}
    for r in report.metrics:
        by_attr.setdefault(r.attribute, []).append(r)
    for attr, rows in by_attr.items():
        groups = list(rows[0].vector.values)
        header = ["metric"] + [format_key(g) for g in groups]
        body = []
        for r in rows:
            cells = [f"{r.vector.values[g]:.6f}" + ("*" if r.flags[g] else " ") for g in groups]
            body.append([r.vector.metric_name] + cells)
        widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
        lines.append("")
        lines.append(f"[{attr}]")
        for row in [header] + body:
            lines.append("  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths))).rstrip())
    if report.ks:
        lines.append("")
        lines.append("KS distance")
        for r in report.ks:
            lines.append(f"  [{r.attribute}] {format_key(r.group_a)} vs {format_key(r.group_b)}: {r.statistic:.6f}")
    for e in report.summary["excluded"]:
        lines.append(f"excluded [{e['attribute']}] {e['group']}: {e['count']} ({e['reason']})")
    lines.append("* below the fairness bound")
    return "\n".join(lines) + "\n"


def render(report: AuditReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(to_dict(report), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["attribute", "metric", "group", "value", "flag"])
        for r in report.metrics:
            for k, v in r.vector.values.items():
                w.writerow([r.attribute, r.vector.metric_name, format_key(k), repr(v), int(r.flags[k])])
        return buf.getvalue()
    if fmt == "text":
        return _text(report)
    raise MetricError(f"unknown format {fmt!r}; choose from {list(FORMATS)}")
