"""Reader for the versioned benchmark summary CSV.

The file format is owned by the benchmark harness; this module only
consumes it. Layout: a schema comment line, a header row, then one data
row per (size, strategy, termination) cell. Anything that does not match
the pinned schema version fails loudly here, before a figure is touched.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

SCHEMA = "gastsp-summary/1"
REQUIRED_COLUMNS = ("size", "strategy", "termination", "mean", "stddev", "trials")


class SchemaError(ValueError):
    """The CSV does not match the supported summary schema."""


@dataclass(frozen=True)
class SummaryCell:
    size: int
    strategy: str
    termination: str
    mean: float
    stddev: float
    trials: int


def load_summary(path: str | Path) -> list[SummaryCell]:
    """Parse one summary CSV; raises SchemaError before returning bad data."""
    text = Path(path).read_text()
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# schema:"):
        raise SchemaError(f"{path}: missing schema line, expected '# schema: {SCHEMA}'")
    declared = lines[0].removeprefix("# schema:").strip()
    if declared != SCHEMA:
        raise SchemaError(f"{path}: unsupported schema {declared!r}, expected {SCHEMA!r}")
    if len(lines) < 2:
        raise SchemaError(f"{path}: header row missing")

    reader = csv.DictReader(io.StringIO("\n".join(lines[1:])))
    header = reader.fieldnames or []
    for column in REQUIRED_COLUMNS:
        if column not in header:
            raise SchemaError(f"{path}: missing column {column!r}")

    cells = []
    for row in reader:
        try:
            cells.append(
                SummaryCell(
                    size=int(row["size"]),
                    strategy=row["strategy"],
                    termination=row["termination"],
                    mean=float(row["mean"]),
                    stddev=float(row["stddev"]),
                    trials=int(row["trials"]),
                )
            )
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"{path}: bad row {row!r}: {exc}") from exc
    return cells
