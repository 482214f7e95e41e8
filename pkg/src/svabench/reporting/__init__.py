"""Metric aggregation and machine-readable report emission."""

from .emit import (
    IoError,
    emit,
    metrics_csv,
    metrics_json_obj,
    plotdata_obj,
    read_records,
    record_from_obj,
    record_to_obj,
    write_records,
)
from .metrics import Delta, DeltaReport, KeyMismatch, MetricsSummary, aggregate, compare

__all__ = [
    "MetricsSummary",
    "aggregate",
    "compare",
    "Delta",
    "DeltaReport",
    "KeyMismatch",
    "IoError",
    "emit",
    "metrics_csv",
    "metrics_json_obj",
    "plotdata_obj",
    "write_records",
    "read_records",
    "record_to_obj",
    "record_from_obj",
]
