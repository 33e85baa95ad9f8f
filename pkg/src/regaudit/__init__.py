"""Bias metrics for continuous candidate scores.

MeanDI and MedDI follow the NYC Local Law 144 audit rules; BinDI curves,
AucDI and PfDI look at the whole score distribution.
"""

from .curves import DiCurve, ProportionGrid, ProportionPrior, auc_di, curve_csv, di_curve, pf_di
from .dataset import DatasetError, GroupPartition, ScoreDataset, ScoreRecord, ingest_csv, partition
from .ks import KsResult, ks_statistic, pairwise_ks
from .metrics import (
    ALL_PASS,
    GroupMetricVector,
    MetricError,
    QuantileThreshold,
    bin_di_at,
    mean_di,
    med_di,
    pooled_quantile,
    selection_rate,
    thresh_di,
)
from .report import AuditReport, audit, flag, render
from .synthetic import analytic_curve, example_spec, sample, sweep

__version__ = "0.1.0"
