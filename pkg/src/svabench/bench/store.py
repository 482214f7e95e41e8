"""Load, split, and serve benchmark directories.

On-disk layout::

    root/
      train/<name>/<name>.v      design source (required)
                   <name>.sva    golden assertions (optional in test/)
                   <name>.json   metadata {kind, description, source}
      test/<name>/...

Golden files hold one assertion statement per line or ``;``-terminated
blocks; ``#`` line comments are permitted.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from importlib.resources import files
from pathlib import Path

from ..pipeline.prompt import IceTuple
from ..rtl.errors import RtlError
from ..rtl.lexer import _strip_comments
from ..rtl.parser import parse_design
from ..rtl.strip import strip_for_prompt


class BenchmarkError(Exception):
    pass


class MissingDirectory(BenchmarkError):
    pass


class DuplicateName(BenchmarkError):
    pass


class UnreadableFile(BenchmarkError):
    pass


class InsufficientExamples(BenchmarkError):
    pass


class EmptyInput(BenchmarkError):
    pass


@dataclass
class BenchmarkEntry:
    name: str
    design_path: Path
    design_kind: str  # 'combinational' | 'sequential' | 'unsupported'
    golden_assertions: list[str]
    line_count: int
    metadata: dict = field(default_factory=dict)
    unsupported_reason: str | None = None

    @property
    def source(self) -> str:
        return self.design_path.read_text(encoding="utf-8")


@dataclass
class Benchmark:
    train: list[BenchmarkEntry]
    test: list[BenchmarkEntry]
    root: Path

    def entry(self, name: str) -> BenchmarkEntry:
        for e in self.train + self.test:
            if e.name == name:
                return e
        raise KeyError(name)


def count_code_lines(source: str) -> int:
    """Lines of code excluding comments and blanks (cloc convention)."""
    return sum(1 for line in _strip_comments(source).splitlines() if line.strip())


def read_golden_file(path: Path) -> list[str]:
    """Split a golden file into ;-terminated assertion statements."""
    body = "\n".join(
        line for line in path.read_text(encoding="utf-8").splitlines()
        if not line.lstrip().startswith("#")
    )
    return [part.strip() + ";" for part in body.split(";") if part.strip()]


def _load_entry(design_dir: Path) -> BenchmarkEntry:
    name = design_dir.name
    design_path = design_dir / f"{name}.v"
    if not design_path.is_file():
        raise UnreadableFile(f"missing design file {design_path}")
    try:
        source = design_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UnreadableFile(f"cannot read {design_path}: {exc}") from exc

    kind = "unsupported"
    reason = None
    try:
        design = parse_design(source)
        kind = "sequential" if design.register_names else "combinational"
    except RtlError as exc:
        reason = str(exc)

    golden_path = design_dir / f"{name}.sva"
    golden = []
    if golden_path.is_file():
        try:
            golden = read_golden_file(golden_path)
        except OSError as exc:
            raise UnreadableFile(f"cannot read {golden_path}: {exc}") from exc

    meta_path = design_dir / f"{name}.json"
    metadata = {}
    if meta_path.is_file():
        try:
            metadata = json.loads(meta_path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UnreadableFile(f"bad metadata {meta_path}: {exc}") from exc

    return BenchmarkEntry(
        name=name,
        design_path=design_path,
        design_kind=kind,
        golden_assertions=golden,
        line_count=count_code_lines(source),
        metadata=metadata,
        unsupported_reason=reason,
    )


def load_benchmark(root: str | Path) -> Benchmark:
    """Load a benchmark tree; read-only and idempotent."""
    root = Path(root)
    splits = {}
    for split in ("train", "test"):
        split_dir = root / split
        if not split_dir.is_dir():
            raise MissingDirectory(f"benchmark root {root} has no {split}/ directory")
        entries = []
        for design_dir in sorted(p for p in split_dir.iterdir() if p.is_dir()):
            entries.append(_load_entry(design_dir))
        splits[split] = entries
    names = [e.name for e in splits["train"] + splits["test"]]
    duplicates = {n for n in names if names.count(n) > 1}
    if duplicates:
        raise DuplicateName(f"duplicate design name(s): {', '.join(sorted(duplicates))}")
    return Benchmark(train=splits["train"], test=splits["test"], root=root)


def select_ices(benchmark: Benchmark, k: int, seed: int = 0) -> list[IceTuple]:
    """Seeded selection of k in-context examples from the training pool.

    Selecting the whole pool returns it in canonical name order; smaller k
    draws without replacement from a seeded generator.
    """
    pool = sorted(benchmark.train, key=lambda e: e.name)
    if k > len(pool):
        raise InsufficientExamples(f"requested {k} examples, pool has {len(pool)}")
    if k == len(pool):
        chosen = pool
    else:
        chosen = random.Random(seed).sample(pool, k)
    return [
        IceTuple(
            name=e.name,
            design_text=strip_for_prompt(e.source),
            assertions=list(e.golden_assertions),
        )
        for e in chosen
    ]


def bundled_benchmark_root() -> Path:
    """Directory of the benchmark fixtures shipped with the package."""
    return Path(str(files("svabench").joinpath("fixtures", "benchmark")))


def bundled_mock_root() -> Path:
    """Directory of the canned completion corpus shipped with the package."""
    return Path(str(files("svabench").joinpath("fixtures", "mock")))


def split(entries: list, train_fraction: float, seed: int = 0) -> tuple[list, list]:
    """Seeded shuffle-then-split; disjoint and exhaustive.

    Train size is floor(train_fraction * N); the remainder is the test side.
    """
    if not entries:
        raise EmptyInput("nothing to split")
    if not 0 < train_fraction < 1:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    shuffled = list(entries)
    random.Random(seed).shuffle(shuffled)
    cut = int(train_fraction * len(shuffled))
    return shuffled[:cut], shuffled[cut:]
