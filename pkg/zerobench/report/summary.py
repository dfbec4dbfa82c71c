"""Grouped means with confidence intervals."""

import math
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, Field

from zerobench.core.metrics import bonferroni_adjust, clopper_pearson, t_interval
from zerobench.core.runner import ResultRow, ResultsTable

# Metrics whose values are 0/1 outcomes summarized as a proportion.
BINARY_METRICS = {"detected"}
RUNTIME_METRIC = "runtime_s"


class GroupField(str, Enum):
    """Columns a summary can be grouped by (the metric is always a group key)."""

    METHOD = "method"  # method name plus parameter set
    SIGNAL = "signal"
    SNR = "snr"


class IntervalKind(str, Enum):
    """Confidence interval construction."""

    CLOPPER_PEARSON = "clopper_pearson"  # exact binomial, for detection outcomes
    T = "t"  # Student-t interval for the mean


class ReportSpec(BaseModel):
    """How to aggregate a results table."""

    group_by: list[GroupField] = Field(
        default_factory=lambda: [GroupField.METHOD, GroupField.SIGNAL, GroupField.SNR],
        min_length=1,
    )
    statistic: Literal["mean"] = "mean"
    confidence: float = Field(default=0.95, gt=0, lt=1)
    interval: IntervalKind | None = None  # None picks per metric
    bonferroni_comparisons: int | None = Field(default=None, ge=1)  # None: methods compared
    runtime: bool = False  # summarize runtime_s instead of the metrics


@dataclass(frozen=True)
class SummaryRow:
    """Aggregate of one group."""

    metric: str
    method: str | None
    signal: str | None
    snr_db: float | None
    mean: float
    lo: float
    hi: float
    count: int
    nan_count: int
    interval: IntervalKind
    degenerate: bool

    @property
    def half_width(self) -> float:
        return (self.hi - self.lo) / 2.0


@dataclass
class Summary:
    """Summary rows plus the spec they were computed with."""

    spec: ReportSpec
    rows: list[SummaryRow] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def metrics(self) -> list[str]:
        return sorted({row.metric for row in self.rows})


def method_label(row: ResultRow) -> str:
    """Method name, with the parameter set appended unless it is the default."""
    if row.param_set_id == "default":
        return row.method
    return f"{row.method}[{row.param_set_id}]"


def runtime_rows(table: ResultsTable) -> list[ResultRow]:
    """One runtime_s row per method call (calls emit one row per metric)."""
    calls: dict[tuple[str, str, str, float, int], ResultRow] = {}
    for row in table.rows:
        call = (row.method, row.param_set_id, row.signal, row.snr_db, row.repetition)
        if call not in calls:
            calls[call] = ResultRow(
                method=row.method,
                param_set_id=row.param_set_id,
                signal=row.signal,
                snr_db=row.snr_db,
                repetition=row.repetition,
                metric=RUNTIME_METRIC,
                value=row.runtime_s,
                runtime_s=row.runtime_s,
            )
    return list(calls.values())


def _group_key(
    row: ResultRow, group_by: list[GroupField]
) -> tuple[str, str | None, str | None, float | None]:
    return (
        row.metric,
        method_label(row) if GroupField.METHOD in group_by else None,
        row.signal if GroupField.SIGNAL in group_by else None,
        row.snr_db if GroupField.SNR in group_by else None,
    )


def _sort_key(key: tuple[str, str | None, str | None, float | None]) -> tuple[Any, ...]:
    metric, method, signal, snr = key
    return (metric, method or "", signal or "", -math.inf if snr is None else snr)


def _aggregate(
    key: tuple[str, str | None, str | None, float | None],
    values: list[float],
    kind: IntervalKind,
    confidence: float,
) -> SummaryRow:
    metric, method, signal, snr = key
    finite = [v for v in values if not math.isnan(v)]
    nan_count = len(values) - len(finite)
    if not finite:
        return SummaryRow(
            metric, method, signal, snr, math.nan, math.nan, math.nan, 0, nan_count, kind, True
        )
    mean = float(np.mean(finite))
    if kind == IntervalKind.CLOPPER_PEARSON:
        successes = sum(1 for v in finite if v >= 0.5)
        lo, hi = clopper_pearson(successes, len(finite), confidence)
        degenerate = False
    else:
        lo, hi = t_interval(finite, confidence)
        degenerate = len(finite) < 2
    return SummaryRow(
        metric, method, signal, snr, mean, lo, hi, len(finite), nan_count, kind, degenerate
    )


def summarize(table: ResultsTable, spec: ReportSpec | None = None) -> Summary:
    """Aggregate a results table into per-group means and intervals.

    Groups are keyed by the metric and the fields of `spec.group_by`. NaN values are excluded
    from the statistics and counted. Binary metrics get Clopper-Pearson intervals and the rest
    Student-t intervals unless `spec.interval` forces one. The confidence level is
    Bonferroni-adjusted by `spec.bonferroni_comparisons`, which defaults to the number of
    method configurations reporting each metric.
    """
    spec = spec or ReportSpec()
    rows = runtime_rows(table) if spec.runtime else table.rows

    groups: dict[tuple[str, str | None, str | None, float | None], list[float]] = (
        defaultdict(list)
    )
    methods_per_metric: dict[str, set[str]] = defaultdict(set)
    for row in rows:
        groups[_group_key(row, spec.group_by)].append(row.value)
        methods_per_metric[row.metric].add(method_label(row))

    summary = Summary(spec=spec)
    for key in sorted(groups, key=_sort_key):
        metric = key[0]
        comparisons = spec.bonferroni_comparisons or len(methods_per_metric[metric])
        confidence = bonferroni_adjust(spec.confidence, comparisons)
        kind = spec.interval or (
            IntervalKind.CLOPPER_PEARSON if metric in BINARY_METRICS else IntervalKind.T
        )
        summary.rows.append(_aggregate(key, groups[key], kind, confidence))
    return summary
