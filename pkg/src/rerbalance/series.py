"""Dated time series and the transforms used to build regression columns.

Missing observations are stored as NaN. Periods are ``(year, sub_period)``
integer pairs: ``sub_period`` runs 1..4 for quarterly data and is always 1 for
annual data. There is no calendar logic beyond that.
"""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DegenerateInputError,
    FrequencyMismatchError,
    NoOverlapError,
)

__all__ = [
    "Frequency",
    "TimeSeries",
    "AlignedSample",
    "lag",
    "pct_change_yoy",
    "natural_log",
    "align_listwise",
    "annual_to_quarterly",
    "format_period",
    "parse_period",
]


class Frequency(enum.Enum):
    QUARTERLY = "Q"
    ANNUAL = "A"

    @property
    def periods_per_year(self) -> int:
        return 4 if self is Frequency.QUARTERLY else 1


Period = tuple  # (year, sub_period)


def format_period(period: Period, freq: Frequency) -> str:
    year, sub = period
    if freq is Frequency.QUARTERLY:
        return f"{year:04d}-Q{sub}"
    return f"{year:04d}"


def parse_period(text: str) -> tuple[Period, Frequency]:
    """Parse ``"YYYY-Qn"`` or ``"YYYY"``; raise ``ValueError`` otherwise."""
    text = text.strip()
    if len(text) == 7 and text[4:6] == "-Q" and text[:4].isdigit() and text[6] in "1234":
        return (int(text[:4]), int(text[6])), Frequency.QUARTERLY
    if len(text) == 4 and text.isdigit():
        return (int(text), 1), Frequency.ANNUAL
    raise ValueError(f"malformed period key {text!r}; expected YYYY-Qn or YYYY")


def _ordinal(period: Period, freq: Frequency) -> int:
    year, sub = period
    m = freq.periods_per_year
    if not 1 <= sub <= m:
        raise ValueError(f"sub-period {sub} out of range for {freq.name.lower()} data")
    return year * m + (sub - 1)


def _from_ordinal(idx: int, freq: Frequency) -> Period:
    m = freq.periods_per_year
    return (idx // m, idx % m + 1)


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Contiguous, frequency-tagged observations with NaN marking missing slots.

    The value array is copied on construction and made read-only, so a series
    can be shared freely between fits.
    """

    name: str
    frequency: Frequency
    start: Period
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float, copy=True).reshape(-1)
        if vals.size < 1:
            raise DegenerateInputError(f"series {self.name!r} is empty")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "start", (int(self.start[0]), int(self.start[1])))
        _ordinal(self.start, self.frequency)

    def __len__(self) -> int:
        return self.values.size

    def __repr__(self) -> str:
        return (
            f"TimeSeries({self.name!r}, {self.frequency.name}, "
            f"{format_period(self.start, self.frequency)}..{format_period(self.end, self.frequency)}, "
            f"n={len(self)}, missing={self.n_missing})"
        )

    @property
    def start_ordinal(self) -> int:
        return _ordinal(self.start, self.frequency)

    @property
    def end(self) -> Period:
        return _from_ordinal(self.start_ordinal + len(self) - 1, self.frequency)

    @property
    def periods(self) -> list[Period]:
        s0 = self.start_ordinal
        return [_from_ordinal(s0 + i, self.frequency) for i in range(len(self))]

    @property
    def observed(self) -> np.ndarray:
        return ~np.isnan(self.values)

    @property
    def n_missing(self) -> int:
        return int(np.isnan(self.values).sum())

    def rename(self, name: str) -> "TimeSeries":
        return TimeSeries(name, self.frequency, self.start, self.values)

    def _derive(self, values, name=None) -> "TimeSeries":
        return TimeSeries(self.name if name is None else name, self.frequency, self.start, values)


def lag(s: TimeSeries, k: int) -> TimeSeries:
    """Shift ``s`` back by ``k`` periods; the first ``k`` slots become missing."""
    if int(k) != k or k < 1:
        raise ValueError(f"lag order must be a positive integer, got {k!r}")
    k = int(k)
    if k >= len(s):
        raise DegenerateInputError(
            f"lag {k} leaves no observations of {s.name!r} (length {len(s)})"
        )
    out = np.full(len(s), np.nan)
    out[k:] = s.values[:-k]
    return s._derive(out, f"{s.name}_lag{k}")


def pct_change_yoy(s: TimeSeries) -> TimeSeries:
    """Year-over-year percent change, ``100 * (s[t] / s[t-m] - 1)``.

    ``m`` is 4 for quarterly and 1 for annual data. A zero base yields a
    missing value instead of an infinity.
    """
    m = s.frequency.periods_per_year
    if len(s) <= m:
        raise DegenerateInputError(
            f"{s.name!r} has {len(s)} observations; year-over-year change needs more than {m}"
        )
    cur = s.values[m:]
    base = s.values[:-m]
    out = np.full(len(s), np.nan)
    with np.errstate(divide="ignore", invalid="ignore"):
        chg = 100.0 * (cur / base - 1.0)
    chg[base == 0] = np.nan
    out[m:] = chg
    return s._derive(out)


def natural_log(s: TimeSeries, *, return_count: bool = False):
    """Natural log of positive entries; non-positive entries become missing.

    With ``return_count=True`` the number of observed-but-non-positive values
    that were dropped is returned alongside the series. A ``RuntimeWarning``
    is issued whenever that count is non-zero.
    """
    vals = s.values
    bad = ~np.isnan(vals) & (vals <= 0)
    out = np.full(len(s), np.nan)
    ok = ~np.isnan(vals) & ~bad
    out[ok] = np.log(vals[ok])
    n_bad = int(bad.sum())
    if n_bad:
        warnings.warn(
            f"natural_log: {n_bad} non-positive value(s) in {s.name!r} set to missing",
            RuntimeWarning,
            stacklevel=2,
        )
    res = s._derive(out, f"log_{s.name}")
    return (res, n_bad) if return_count else res


def annual_to_quarterly(s: TimeSeries) -> TimeSeries:
    """Repeat each annual value into the four quarters of its year."""
    if s.frequency is not Frequency.ANNUAL:
        raise FrequencyMismatchError(f"{s.name!r} is not annual")
    return TimeSeries(s.name, Frequency.QUARTERLY, (s.start[0], 1), np.repeat(s.values, 4))


@dataclass(frozen=True)
class AlignedSample:
    """Row-complete matrix produced by listwise deletion.

    ``matrix[:, j]`` holds column ``names[j]``; ``periods`` gives the period
    of every kept row in chronological order. ``dropped`` counts the periods
    of the combined span that were discarded.
    """

    names: tuple
    frequency: Frequency
    periods: tuple
    matrix: np.ndarray
    dropped: int

    @property
    def nobs(self) -> int:
        return self.matrix.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.matrix[:, self.names.index(name)]


def align_listwise(columns: Sequence[TimeSeries]) -> AlignedSample:
    """Keep the periods where every column is observed.

    The combined span runs from the earliest start to the latest end of the
    inputs; every period in it that is not kept counts as dropped.
    """
    columns = list(columns)
    if not columns:
        raise DegenerateInputError("align_listwise needs at least one column")
    freq = columns[0].frequency
    for c in columns[1:]:
        if c.frequency is not freq:
            raise FrequencyMismatchError(
                f"{c.name!r} is {c.frequency.name.lower()} but {columns[0].name!r} is {freq.name.lower()}"
            )
    lo = min(c.start_ordinal for c in columns)
    hi = max(c.start_ordinal + len(c) for c in columns)
    width = hi - lo
    grid = np.full((width, len(columns)), np.nan)
    for j, c in enumerate(columns):
        off = c.start_ordinal - lo
        grid[off:off + len(c), j] = c.values

    keep = np.ones(width, dtype=bool)
    for j, c in enumerate(columns):
        keep_next = keep & ~np.isnan(grid[:, j])
        if not keep_next.any():
            if keep.all():
                raise NoOverlapError(f"series {c.name!r} has no observations")
            others = ", ".join(repr(x.name) for x in columns[:j])
            raise NoOverlapError(
                f"series {c.name!r} shares no observed period with {others}"
            )
        keep = keep_next

    idx = np.flatnonzero(keep)
    mat = grid[idx]
    mat.setflags(write=False)
    periods = tuple(_from_ordinal(lo + i, freq) for i in idx)
    return AlignedSample(
        names=tuple(c.name for c in columns),
        frequency=freq,
        periods=periods,
        matrix=mat,
        dropped=int(width - idx.size),
    )
