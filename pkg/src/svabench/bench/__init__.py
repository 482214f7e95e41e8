"""Benchmark loading, validation, and the bundled fixture set."""

from .store import (
    Benchmark,
    BenchmarkEntry,
    BenchmarkError,
    DuplicateName,
    EmptyInput,
    InsufficientExamples,
    MissingDirectory,
    UnreadableFile,
    count_code_lines,
    load_benchmark,
    read_golden_file,
    select_ices,
    split,
)
from .validate import ValidationReport, validate

__all__ = [
    "Benchmark",
    "BenchmarkEntry",
    "BenchmarkError",
    "MissingDirectory",
    "DuplicateName",
    "UnreadableFile",
    "InsufficientExamples",
    "EmptyInput",
    "load_benchmark",
    "read_golden_file",
    "count_code_lines",
    "select_ices",
    "split",
    "ValidationReport",
    "validate",
]
