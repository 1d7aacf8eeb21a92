"""Sample grids, CSV files and replicate statistics for traces."""

import csv
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from pimlang.exc import SimulationError
from pimlang.log import get_logger
from pimlang.schemas.trace import TraceTable

log = get_logger(__name__)


def sample_grid(until: float, points: int) -> np.ndarray:
    """`points + 1` evenly spaced times from 0 to `until` inclusive."""
    return np.linspace(0.0, until, points + 1)


def _cell(value: float | int) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if value.is_integer():
        return str(int(value))
    return repr(value)


def write_csv(trace: TraceTable, path: Path) -> None:
    """
    Writes a trace with header `time,<columns>` and one row per sample time.

    Integer-valued cells are written without a decimal point, so counts read back
    exactly and the same trace always produces the same bytes.
    """
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(("time", *trace.columns))
        for time, row in zip(trace.times, trace.counts):
            writer.writerow((repr(float(time)), *(_cell(v) for v in row)))
    log.debug("wrote %d rows to %s", len(trace.times), path)


def read_csv(path: Path) -> TraceTable:
    with open(path, newline="", encoding="utf-8") as f:
        rows = list(csv.reader(f))
    if not rows or not rows[0] or rows[0][0] != "time":
        raise SimulationError(f"{path} is not a trace file")
    data = np.array([[float(cell) for cell in row] for row in rows[1:]], dtype=float)
    data = data.reshape(len(rows) - 1, len(rows[0]))
    return TraceTable(times=data[:, 0], columns=tuple(rows[0][1:]), counts=data[:, 1:])


def summarize(traces: Sequence[TraceTable]) -> tuple[TraceTable, TraceTable]:
    """
    Mean trace and standard error of the mean over replicates.

    Args:
        traces (Sequence[TraceTable]): Replicates sharing times and columns.

    Returns:
        tuple[TraceTable, TraceTable]: The mean and, per cell, the sample standard
            deviation divided by sqrt(n). A single replicate has zero error.
    """
    if not traces:
        raise SimulationError("no traces to summarize")
    first = traces[0]
    for trace in traces[1:]:
        if trace.columns != first.columns or not np.array_equal(trace.times, first.times):
            raise SimulationError("replicates disagree on times or columns")
    stack = np.stack([trace.counts.astype(float) for trace in traces])
    mean = stack.mean(axis=0)
    if len(traces) > 1:
        stderr = stack.std(axis=0, ddof=1) / np.sqrt(len(traces))
    else:
        stderr = np.zeros_like(mean)
    return (
        TraceTable(times=first.times, columns=first.columns, counts=mean),
        TraceTable(times=first.times, columns=first.columns, counts=stderr),
    )


def z_scores(
    a_mean: TraceTable, a_se: TraceTable, b_mean: TraceTable, b_se: TraceTable
) -> np.ndarray:
    """
    Per-cell z-scores of the difference of two mean traces.

    Where the pooled error is zero, the score is 0 for equal means and infinite
    otherwise.

    Returns:
        np.ndarray: Absolute z-scores, shaped like the count arrays.
    """
    if a_mean.columns != b_mean.columns:
        raise SimulationError("traces have different columns")
    diff = np.abs(a_mean.counts - b_mean.counts)
    pooled = np.sqrt(a_se.counts**2 + b_se.counts**2)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(pooled > 0, diff / np.where(pooled > 0, pooled, 1.0), 0.0)
    return np.where((pooled == 0) & (diff > 0), np.inf, z)
