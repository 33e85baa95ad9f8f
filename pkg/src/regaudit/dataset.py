"""Loading scored candidates from CSV and splitting them into groups."""

from __future__ import annotations

import csv
import math
import os
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

GroupKey = tuple[str, ...]


class DatasetError(ValueError):
    """Raised when input data cannot be turned into a usable dataset."""


@dataclass(frozen=True)
class ScoreRecord:
    score: float
    attributes: Mapping[str, str]

    def __post_init__(self):
        if not math.isfinite(self.score):
            raise DatasetError(f"score must be finite, got {self.score!r}")


@dataclass(frozen=True)
class ScoreDataset:
    records: tuple[ScoreRecord, ...]
    schema: tuple[str, ...]
    dropped_count: int = 0

    def __post_init__(self):
        if not self.records:
            raise DatasetError("dataset has no records")
        for rec in self.records:
            for name in self.schema:
                if not rec.attributes.get(name):
                    raise DatasetError(f"record is missing attribute {name!r}")

    def __len__(self) -> int:
        return len(self.records)

    @property
    def scores(self) -> np.ndarray:
        return np.fromiter((r.score for r in self.records), dtype=float, count=len(self.records))

    @classmethod
    def from_arrays(cls, scores: Sequence[float], **attributes: Sequence[str]) -> "ScoreDataset":
        """Build a dataset from parallel columns, e.g. ``from_arrays(s, gender=g)``."""
        n = len(scores)
        for name, col in attributes.items():
            if len(col) != n:
                raise DatasetError(f"column {name!r} has {len(col)} values, expected {n}")
        records = tuple(
            ScoreRecord(float(s), {name: str(col[i]).strip() for name, col in attributes.items()})
            for i, s in enumerate(scores)
        )
        return cls(records, tuple(attributes))


@dataclass(frozen=True)
class GroupPartition:
    """Scores split by the label tuple of ``attribute_spec``.

    ``groups`` is ordered by key so everything downstream is deterministic.
    Groups smaller than the size floor live in ``excluded`` (key -> count).
    """

    attribute_spec: tuple[str, ...]
    groups: Mapping[GroupKey, np.ndarray]
    excluded: Mapping[GroupKey, int] = field(default_factory=dict)

    @property
    def counts(self) -> dict[GroupKey, int]:
        return {k: len(v) for k, v in self.groups.items()}

    @property
    def keys(self) -> list[GroupKey]:
        return list(self.groups)

    def pooled(self) -> np.ndarray:
        return np.concatenate(list(self.groups.values()))

    @classmethod
    def from_groups(cls, groups: Mapping, attribute_spec: Sequence[str] = ("group",)) -> "GroupPartition":
        """Wrap raw score vectors. Plain string keys become 1-tuples."""
        out = {}
        for key in sorted(groups, key=lambda k: _as_key(k)):
            arr = np.asarray(groups[key], dtype=float).ravel()
            if arr.size == 0:
                raise DatasetError(f"group {key!r} is empty")
            if not np.all(np.isfinite(arr)):
                raise DatasetError(f"group {key!r} has non-finite scores")
            out[_as_key(key)] = arr
        if not out:
            raise DatasetError("partition has no groups")
        return cls(tuple(attribute_spec), OrderedDict(out), {})


def _as_key(key) -> GroupKey:
    return tuple(key) if isinstance(key, tuple) else (str(key),)


def format_key(key: GroupKey) -> str:
    return " & ".join(key)


def _parse_score(raw: str | None) -> float | None:
    if raw is None:
        return None
    raw = raw.strip()
    if not raw:
        return None
    try:
        value = float(raw)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def ingest_csv(path: str | os.PathLike, score_column: str, attribute_columns: Sequence[str]) -> ScoreDataset:
    """Read a comma-separated file with a header row.

    Rows whose score is empty, unparseable or non-finite, or which lack any of
    the requested attribute labels, are skipped and counted in
    ``dropped_count``. Labels are whitespace-trimmed but otherwise compared
    verbatim.
    """
    if not os.path.isfile(path):
        raise DatasetError(f"input file not found: {path}")
    attribute_columns = tuple(attribute_columns)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        stripped = {h.strip(): h for h in header}
        for col in (score_column, *attribute_columns):
            if col not in stripped:
                raise DatasetError(f"column {col!r} not found in header of {path}")
        score_key = stripped[score_column]
        attr_keys = [stripped[c] for c in attribute_columns]

        records = []
        dropped = 0
        for row in reader:
            score = _parse_score(row.get(score_key))
            labels = [(row.get(k) or "").strip() for k in attr_keys]
            if score is None or not all(labels):
                dropped += 1
                continue
            records.append(ScoreRecord(score, dict(zip(attribute_columns, labels))))

    if not records:
        raise DatasetError(f"no usable rows in {path} ({dropped} dropped)")
    return ScoreDataset(tuple(records), attribute_columns, dropped)


def partition(ds: ScoreDataset, attribute_spec: Sequence[str], min_group_size: int = 1) -> GroupPartition:
    attribute_spec = tuple(attribute_spec)
    if not attribute_spec:
        raise DatasetError("attribute_spec must name at least one attribute")
    for name in attribute_spec:
        if name not in ds.schema:
            raise DatasetError(f"attribute {name!r} is not in the dataset schema {list(ds.schema)}")
    if min_group_size < 1:
        raise DatasetError("min_group_size must be >= 1")

    buckets: dict[GroupKey, list[float]] = {}
    for rec in ds.records:
        key = tuple(rec.attributes[name] for name in attribute_spec)
        buckets.setdefault(key, []).append(rec.score)

    groups = OrderedDict()
    excluded = OrderedDict()
    for key in sorted(buckets):
        scores = buckets[key]
        if len(scores) < min_group_size:
            excluded[key] = len(scores)
        else:
            groups[key] = np.asarray(scores, dtype=float)
    if not groups:
        raise DatasetError(f"every group has fewer than {min_group_size} members")
    return GroupPartition(attribute_spec, groups, excluded)
