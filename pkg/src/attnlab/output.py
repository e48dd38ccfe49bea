"""Bit-stable text output: CSV tables and trajectory exports.

Floats are written in their shortest round-trip decimal form, so a reader
recovers the exact doubles and equal runs produce byte-identical files.
Every table opens with a schema-version comment line and uses plain
linefeed endings regardless of platform.
"""

from __future__ import annotations

import os
from typing import Mapping, Sequence

import numpy as np

from .dynamics import TrajectoryRecord
from .experiments import SweepResult

SCAN_SCHEMA_LINE = "# schema: scan-v1"
SWEEP_SCHEMA_LINE = "# schema: sweep-v1"
TRAJECTORY_SCHEMA_LINE = "# schema: trajectory-v1"

SCAN_COLUMNS = (
    "imitator_id",
    "target_id",
    "imitator_rank",
    "target_rank",
    "imitator_centrality",
    "target_centrality",
    "lambda_before",
    "lambda_after",
    "delta_exact",
    "delta_predicted",
    "condition",
    "A_before",
    "A_after",
)
SWEEP_COLUMNS = ("kind", "sigma", "instances", "pairs", "successes", "success_rate")


def format_value(value) -> str:
    """Shortest exact decimal for floats, plain text for everything else."""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def write_scan_csv(rows: Sequence[Mapping], path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(SCAN_SCHEMA_LINE + "\n")
        handle.write(",".join(SCAN_COLUMNS) + "\n")
        for row in rows:
            handle.write(",".join(format_value(row[col]) for col in SCAN_COLUMNS) + "\n")


def write_sweep_csv(result: SweepResult, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(SWEEP_SCHEMA_LINE + "\n")
        handle.write(",".join(SWEEP_COLUMNS) + "\n")
        for row in result.rows:
            values = (row.kind, row.sigma, row.instances, row.pairs, row.successes, row.success_rate)
            handle.write(",".join(format_value(v) for v in values) + "\n")


def write_trajectory_csv(
    record: TrajectoryRecord, path: str | os.PathLike, include_boredom: bool = False
) -> None:
    n = record.n_nodes
    columns = ["time"] + [f"a_{i + 1}" for i in range(n)]
    if include_boredom:
        columns += [f"b_{i + 1}" for i in range(n)]
    columns.append("observable_A")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(TRAJECTORY_SCHEMA_LINE + "\n")
        handle.write(",".join(columns) + "\n")
        for step in range(record.times.size):
            parts = [format_value(record.times[step])]
            parts += [format_value(x) for x in record.attention[step]]
            if include_boredom:
                parts += [format_value(x) for x in record.boredom[step]]
            parts.append(format_value(record.observable[step]))
            handle.write(",".join(parts) + "\n")
