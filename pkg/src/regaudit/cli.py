"""Command line entry point.

    regaudit audit --input scores.csv --score-col score --attrs gender,ethnicity --intersect
    regaudit curve --input scores.csv --score-col score --attrs ethnicity --out curve.csv
    regaudit sweep --example 1 --mode analytic --out sweep1.csv

``audit`` exits 0 when nothing is flagged, 2 when any group falls below the
bound and 1 on errors, so it can gate a pipeline.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field, fields

from .curves import ProportionPrior, curve_csv, di_curve
from .dataset import DatasetError, ingest_csv, partition
from .metrics import MetricError
from .report import FORMATS, METRIC_CHOICES, audit, render
from .synthetic import METRICS as SWEEP_METRICS
from .synthetic import sweep

EXIT_OK, EXIT_ERROR, EXIT_FLAGGED = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class AuditConfig:
    input: str | None = None
    score_col: str | None = None
    attrs: list[str] = field(default_factory=list)
    intersect: bool = False
    metrics: list[str] = field(default_factory=lambda: ["mean", "median", "auc", "pf"])
    threshold: float | None = None
    prior: str = "flat"
    bound: float = 0.8
    min_group: int = 1
    format: str = "json"
    out: str | None = None
    seed: int = 0
    mode: str = "analytic"
    example: int | None = None
    n: int = 100_000

    def attribute_specs(self) -> list[tuple[str, ...]]:
        specs = [(a,) for a in self.attrs]
        if self.intersect and len(self.attrs) > 1:
            specs.append(tuple(self.attrs))
        return specs


def _split(value) -> list[str]:
    if isinstance(value, str):
        return [v.strip() for v in value.split(",") if v.strip()]
    return [str(v) for v in value]


def parse_prior(text: str) -> ProportionPrior:
    """``flat``, ``delta:<p>`` or a path to a file holding 100 weights."""
    if text == "flat":
        return ProportionPrior.flat()
    if text.startswith("delta:"):
        try:
            return ProportionPrior.delta(float(text[len("delta:"):]))
        except ValueError as exc:
            raise ConfigError(f"bad delta prior {text!r}") from exc
    try:
        with open(text, encoding="utf-8") as fh:
            weights = [float(tok) for tok in re.split(r"[\s,]+", fh.read()) if tok]
    except OSError as exc:
        raise ConfigError(f"cannot read prior file {text!r}: {exc.strerror}") from exc
    except ValueError as exc:
        raise ConfigError(f"prior file {text!r} has a non-numeric weight") from exc
    if len(weights) != 100:
        raise ConfigError(f"prior file {text!r} has {len(weights)} weights, expected 100")
    return ProportionPrior.custom(weights)


def build_config(args: argparse.Namespace) -> AuditConfig:
    """Defaults, then the optional JSON config file, then explicit flags."""
    cfg = AuditConfig()
    known = {f.name for f in fields(AuditConfig)}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot load config {args.config}: {exc}") from exc
        for key, value in loaded.items():
            key = key.replace("-", "_")
            if key not in known:
                raise ConfigError(f"unknown config key {key!r}")
            setattr(cfg, key, value)
    for name in known:
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    cfg.attrs = _split(cfg.attrs)
    cfg.metrics = _split(cfg.metrics)
    return cfg


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _require_input(cfg: AuditConfig):
    if not cfg.input or not cfg.score_col or not cfg.attrs:
        raise ConfigError("--input, --score-col and --attrs are required")


def cmd_audit(cfg: AuditConfig) -> int:
    _require_input(cfg)
    bad = [m for m in cfg.metrics if m not in METRIC_CHOICES]
    if bad or not cfg.metrics:
        raise ConfigError(f"--metrics must be a non-empty subset of {','.join(METRIC_CHOICES)}")
    if ("thresh" in cfg.metrics) != (cfg.threshold is not None):
        raise ConfigError("--threshold is required exactly when the thresh metric is selected")
    if cfg.format not in FORMATS:
        raise ConfigError(f"--format must be one of {','.join(FORMATS)}")
    ds = ingest_csv(cfg.input, cfg.score_col, cfg.attrs)
    report = audit(ds, cfg.attribute_specs(), cfg.metrics, cfg.threshold, parse_prior(cfg.prior),
                   cfg.bound, cfg.min_group)
    _emit(render(report, cfg.format), cfg.out)
    return EXIT_FLAGGED if report.any_flagged else EXIT_OK


def cmd_curve(cfg: AuditConfig) -> int:
    _require_input(cfg)
    if len(cfg.attrs) > 1 and not cfg.intersect:
        raise ConfigError("curve takes a single attribute, or several with --intersect")
    ds = ingest_csv(cfg.input, cfg.score_col, cfg.attrs)
    part = partition(ds, cfg.attrs, cfg.min_group)
    _emit(curve_csv(di_curve(part)), cfg.out)
    return EXIT_OK


def cmd_sweep(cfg: AuditConfig) -> int:
    if cfg.example is None:
        raise ConfigError("--example is required")
    metrics = [m for m in cfg.metrics if m in SWEEP_METRICS]
    if not metrics:
        raise ConfigError(f"sweep metrics must include some of {','.join(SWEEP_METRICS)}")
    rows = sweep(int(cfg.example), metrics=metrics, mode=cfg.mode, n_per_group=int(cfg.n), seed=int(cfg.seed),
                 prior=parse_prior(cfg.prior), fairness_bound=cfg.bound)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["parameter", "group", "metric", "value"])
    for param, group, metric, value in rows:
        w.writerow([f"{param:g}", group, metric, repr(value)])
    _emit(buf.getvalue(), cfg.out)
    return EXIT_OK


COMMANDS = {"audit": cmd_audit, "curve": cmd_curve, "sweep": cmd_sweep}


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with option defaults; flags override it")
    common.add_argument("--input", help="CSV file with a header row")
    common.add_argument("--score-col", dest="score_col")
    common.add_argument("--attrs", help="comma-separated protected attribute columns")
    common.add_argument("--intersect", action="store_true", default=None,
                        help="also audit the intersection of all --attrs")
    common.add_argument("--metrics", help=f"comma-separated subset of {','.join(METRIC_CHOICES)}")
    common.add_argument("--threshold", type=float, help="raw score cut for ThreshDI")
    common.add_argument("--prior", help="flat | delta:<p> | path to 100 weights")
    common.add_argument("--bound", type=float, help="fairness bound (default 0.8)")
    common.add_argument("--min-group", dest="min_group", type=int)
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--out", help="output path (stdout if omitted)")
    common.add_argument("--seed", type=int)
    common.add_argument("--mode", choices=("analytic", "sampled"))
    common.add_argument("--example", type=int, choices=(1, 2, 3))
    common.add_argument("--n", type=int, help="samples per group for sampled sweeps")

    parser = argparse.ArgumentParser(prog="regaudit", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("audit", parents=[common], help="metric table with four-fifths flags")
    sub.add_parser("curve", parents=[common], help="per-group BinDI curve as CSV")
    sub.add_parser("sweep", parents=[common], help="metrics across a synthetic example's parameter range")
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        return COMMANDS[args.command](cfg)
    except (ConfigError, DatasetError, MetricError) as exc:
        print(f"regaudit: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
