"""CSV ingestion and trajectory output.

Input files carry a header row. The first column holds period keys,
``YYYY-Qn`` for quarterly or ``YYYY`` for annual data; the other columns are
decimal numbers with empty cells meaning "missing". Rows must be in
chronological order. Gaps between periods are filled with missing values.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import CsvFormatError
from .series import Frequency, TimeSeries, format_period, parse_period

__all__ = ["Schema", "Dataset", "load_csv", "write_series_csv", "write_trajectory", "write_event_log"]


@dataclass(frozen=True)
class Schema:
    """Optional expectations for a CSV file.

    ``frequency`` pins the period format. ``columns`` restricts which numeric
    columns are loaded (all others are ignored). ``text_columns`` are kept as
    raw strings instead of being parsed as numbers.
    """

    frequency: Frequency | None = None
    columns: tuple | None = None
    text_columns: tuple = ()


@dataclass
class Dataset:
    path: str
    frequency: Frequency
    periods: list
    series: dict
    text: dict = field(default_factory=dict)

    def __getitem__(self, name: str) -> TimeSeries:
        return self.series[name]

    def __contains__(self, name) -> bool:
        return name in self.series

    def __iter__(self):
        return iter(self.series)

    def keys(self):
        return self.series.keys()

    def items(self):
        return self.series.items()

    def values(self):
        return self.series.values()

    def get(self, name, default=None):
        return self.series.get(name, default)

    def __len__(self):
        return len(self.series)

    @property
    def nrows(self) -> int:
        return len(self.periods)

    @property
    def frequencies(self) -> dict:
        return {name: s.frequency for name, s in self.series.items()}


def _parse_number(cell, column, line):
    cell = cell.strip()
    if cell == "":
        return math.nan
    try:
        v = float(cell)
    except ValueError:
        raise CsvFormatError(f"non-numeric value {cell!r}", line, column) from None
    if not math.isfinite(v):
        raise CsvFormatError(f"non-finite value {cell!r}", line, column)
    return v


def load_csv(path, schema: Schema | None = None) -> Dataset:
    """Read a period-keyed CSV into a :class:`Dataset`.

    Raises :class:`CsvFormatError` (with the 1-based file line number) on a
    malformed period key, a non-numeric cell, a duplicate period, rows out
    of chronological order, or a frequency that contradicts ``schema``.
    """
    schema = schema or Schema()
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        text = fh.read()
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise CsvFormatError("file is empty; header row required", 1) from None
    header = [h.strip() for h in header]
    if len(header) < 2:
        raise CsvFormatError("header needs a period column and at least one data column", 1)
    names = header[1:]
    if len(set(names)) != len(names) or "" in names:
        raise CsvFormatError("column names must be unique and non-empty", 1)
    if schema.columns is not None:
        unknown = [c for c in schema.columns if c not in names]
        if unknown:
            raise CsvFormatError(f"declared column(s) not in header: {', '.join(unknown)}", 1)
    wanted = [
        j for j, c in enumerate(names)
        if c not in schema.text_columns and (schema.columns is None or c in schema.columns)
    ]
    text_idx = [j for j, c in enumerate(names) if c in schema.text_columns]

    freq = schema.frequency
    ordinals, rows, texts = [], [], []
    prev = None
    for line_no, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise CsvFormatError(f"expected {len(header)} fields, found {len(row)}", line_no)
        try:
            period, pf = parse_period(row[0])
        except ValueError as exc:
            raise CsvFormatError(str(exc), line_no, header[0]) from None
        if freq is None:
            freq = pf
        elif pf is not freq:
            raise CsvFormatError(
                f"period {row[0].strip()!r} is {pf.name.lower()} but file is {freq.name.lower()}",
                line_no,
            )
        m = freq.periods_per_year
        o = period[0] * m + period[1] - 1
        if prev is not None:
            if o == prev:
                raise CsvFormatError(f"duplicate period {row[0].strip()!r}", line_no)
            if o < prev:
                raise CsvFormatError(f"rows out of chronological order at {row[0].strip()!r}", line_no)
        prev = o
        ordinals.append(o)
        rows.append([_parse_number(row[j + 1], names[j], line_no) for j in wanted])
        texts.append([row[j + 1] for j in text_idx])

    if not rows:
        raise CsvFormatError("no data rows", 2)
    m = freq.periods_per_year
    start_o = ordinals[0]
    width = ordinals[-1] - start_o + 1
    grid = np.full((width, len(wanted)), np.nan)
    pos = np.asarray(ordinals) - start_o
    grid[pos] = np.asarray(rows, dtype=float).reshape(len(rows), len(wanted))
    start = (start_o // m, start_o % m + 1)
    series = {names[j]: TimeSeries(names[j], freq, start, grid[:, c]) for c, j in enumerate(wanted)}
    text_cols = {}
    for c, j in enumerate(text_idx):
        col = [""] * width
        for p, t in zip(pos, texts):
            col[p] = t[c]
        text_cols[names[j]] = col
    periods = [(o // m, o % m + 1) for o in ordinals]
    return Dataset(str(path), freq, periods, series, text_cols)


def write_series_csv(series, out, period_header: str = "date") -> None:
    """Write same-frequency series onto their union span, one column each.

    Missing values are written as empty cells so the file reloads with
    :func:`load_csv` unchanged.
    """
    series = list(series.values()) if isinstance(series, dict) else list(series)
    if not series:
        raise ValueError("no series to write")
    freq = series[0].frequency
    if any(s.frequency is not freq for s in series):
        raise ValueError("all series must share one frequency")
    lo = min(s.start_ordinal for s in series)
    hi = max(s.start_ordinal + len(s) - 1 for s in series)
    m = freq.periods_per_year
    with open(out, "w", newline="", encoding="ascii") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([period_header] + [s.name for s in series])
        for o in range(lo, hi + 1):
            row = [format_period((o // m, o % m + 1), freq)]
            for s in series:
                j = o - s.start_ordinal
                v = s.values[j] if 0 <= j < len(s) else math.nan
                row.append("" if math.isnan(v) else repr(float(v)))
            w.writerow(row)


def write_trajectory(path_obj, out) -> None:
    """Write a :class:`~rerbalance.scenario.ScenarioPath` as CSV."""
    from .scenario import TRAJECTORY_COLUMNS

    with open(out, "w", newline="", encoding="ascii") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRAJECTORY_COLUMNS)
        for row in path_obj.rows():
            w.writerow(row)


def write_event_log(path_obj, out) -> None:
    events = [
        {"period": path_obj.period_label(e.period), "index": e.period, "kind": e.kind, "value": e.value}
        for e in path_obj.events
    ]
    doc = {"events": events, "ledger": list(path_obj.ledger)}
    with open(out, "w", encoding="ascii") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
