"""Daily-grid multivariate series: ingestion, alignment, imputation, summaries.

The central type is :class:`SeriesFrame`, an immutable ``T x K`` block of
daily observations.  Dates are implicit: row ``i`` belongs to
``start_date + i`` days, so the grid is contiguous by construction and a
tracking gap shows up as a missing value (NaN), never as a missing row.

Two source schemas are supported:

* sleep exports with header ``date,score`` (integer score 1..100, may be empty),
* mood logs with header ``date,depressed,anxious,irritable,elevated``
  (integers 0..3, several rows per day allowed; the most severe value wins).
"""

from __future__ import annotations

import csv
import datetime as dt
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from ._util import TextSource, freeze, open_text_read, open_text_write
from .errors import DataError

MOOD_VARIABLES = ("depressed", "anxious", "irritable", "elevated")
MOOD_LEVELS = (0, 1, 2, 3)

IMPUTE_POLICIES = ("forward_fill", "linear", "none")
DEFAULT_IMPUTE_POLICY = "forward_fill"
DEFAULT_MAX_GAP = 3


class VariableKind(Enum):
    SLEEP_SCORE = "sleep_score"
    MOOD = "mood"


@dataclass(frozen=True)
class VariableSpec:
    """Name, kind, and inclusive valid range of one tracked variable."""

    name: str
    kind: VariableKind
    valid_range: tuple[float, float]


SLEEP_SCORE_SPEC = VariableSpec("score", VariableKind.SLEEP_SCORE, (1.0, 100.0))
MOOD_SPECS = tuple(VariableSpec(n, VariableKind.MOOD, (0.0, 3.0)) for n in MOOD_VARIABLES)


@dataclass(frozen=True)
class SummaryStats:
    """Column summary over the non-missing values (sd uses the n-1 divisor)."""

    total: int
    missing: int
    mean: float
    sd: float
    max: float
    min: float


@dataclass(frozen=True)
class SeriesFrame:
    """Immutable daily grid of K named series with explicit missingness.

    ``values`` has shape (T, K) float64; NaN marks a missing cell.  All
    operations on frames are pure functions returning new frames, so
    instances are safe to share between threads.
    """

    start_date: dt.date
    names: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 2:
            raise DataError(f"frame values must be 2-D, got shape {vals.shape}")
        if vals.shape[0] < 1:
            raise DataError("frame must contain at least one row")
        if vals.shape[1] != len(self.names):
            raise DataError(
                f"frame has {len(self.names)} names but {vals.shape[1]} columns"
            )
        if not all(isinstance(n, str) and n for n in self.names):
            raise DataError("variable names must be non-empty strings")
        if len(set(self.names)) != len(self.names):
            raise DataError(f"variable names must be unique, got {self.names}")
        if np.isinf(vals).any():
            raise DataError("frame values must be finite or missing (NaN)")
        object.__setattr__(self, "values", freeze(vals))

    @property
    def n_obs(self) -> int:
        return self.values.shape[0]

    @property
    def n_vars(self) -> int:
        return self.values.shape[1]

    @property
    def end_date(self) -> dt.date:
        return self.start_date + dt.timedelta(days=self.n_obs - 1)

    def dates(self) -> list[dt.date]:
        return [self.start_date + dt.timedelta(days=i) for i in range(self.n_obs)]

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise DataError(f"unknown column {name!r}; frame has {self.names}") from None

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.index_of(name)]

    def has_missing(self) -> bool:
        return bool(np.isnan(self.values).any())


def _parse_date(cell: str, line_no: int) -> dt.date:
    try:
        return dt.date.fromisoformat(cell.strip())
    except ValueError:
        raise DataError(f"line {line_no}: malformed date {cell.strip()!r} (expected YYYY-MM-DD)")


def _data_rows(source: TextSource, expected_header: Sequence[str]):
    """Yield (line_no, row) for every data row after validating the header."""
    with open_text_read(source) as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataError("empty file: missing header row")
        header = [h.strip() for h in header]
        if header != list(expected_header):
            raise DataError(
                f"unexpected header {header!r}; expected {list(expected_header)!r}"
            )
        n_rows = 0
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(expected_header):
                raise DataError(
                    f"line {line_no}: expected {len(expected_header)} fields, got {len(row)}"
                )
            n_rows += 1
            yield line_no, row
        if n_rows == 0:
            raise DataError("empty file: no data rows")


def ingest_sleep(source: TextSource) -> SeriesFrame:
    """Read a sleep export (``date,score``) onto the contiguous daily grid.

    The grid spans the earliest to the latest date in the file.  Dates absent
    from the file and empty score cells become missing values.  Scores must
    be integers inside the valid range; duplicate dates are an error (one
    sleep bout per night).
    """
    lo, hi = SLEEP_SCORE_SPEC.valid_range
    seen: dict[dt.date, float] = {}
    for line_no, row in _data_rows(source, ("date", "score")):
        day = _parse_date(row[0], line_no)
        if day in seen:
            raise DataError(f"line {line_no}: duplicate date {day.isoformat()}")
        cell = row[1].strip()
        if cell == "":
            seen[day] = math.nan
            continue
        try:
            score = int(cell)
        except ValueError:
            raise DataError(
                f"line {line_no}: sleep score must be an integer or empty, got {cell!r}"
            )
        if not lo <= score <= hi:
            raise DataError(
                f"line {line_no}: sleep score {score} outside [{lo:.0f}, {hi:.0f}]"
            )
        seen[day] = float(score)

    start = min(seen)
    n = (max(seen) - start).days + 1
    col = np.full(n, np.nan)
    for day, value in seen.items():
        col[(day - start).days] = value
    return SeriesFrame(start, (SLEEP_SCORE_SPEC.name,), col.reshape(-1, 1))


def ingest_mood(source: TextSource, absent_as_zero: bool = True) -> SeriesFrame:
    """Read a mood log (``date,depressed,anxious,irritable,elevated``).

    Several rows may land on one day (repeated logging); they are combined
    by per-column maximum, keeping the most severe state.  Days inside the
    covered span with no row at all become 0 ("not present") under the
    default ``absent_as_zero`` policy, or stay missing when it is off.
    """
    by_day: dict[dt.date, np.ndarray] = {}
    for line_no, row in _data_rows(source, ("date",) + MOOD_VARIABLES):
        day = _parse_date(row[0], line_no)
        levels = np.empty(len(MOOD_VARIABLES))
        for j, cell in enumerate(row[1:]):
            cell = cell.strip()
            try:
                value = int(cell)
            except ValueError:
                raise DataError(
                    f"line {line_no}: {MOOD_VARIABLES[j]} must be an integer 0-3, got {cell!r}"
                )
            if value not in MOOD_LEVELS:
                raise DataError(
                    f"line {line_no}: {MOOD_VARIABLES[j]} value {value} outside 0-3"
                )
            levels[j] = float(value)
        prev = by_day.get(day)
        by_day[day] = levels if prev is None else np.maximum(prev, levels)

    start = min(by_day)
    n = (max(by_day) - start).days + 1
    fill = 0.0 if absent_as_zero else np.nan
    vals = np.full((n, len(MOOD_VARIABLES)), fill)
    for day, levels in by_day.items():
        vals[(day - start).days] = levels
    return SeriesFrame(start, MOOD_VARIABLES, vals)


def merge(frames: Sequence[SeriesFrame]) -> SeriesFrame:
    """Align frames on the union daily grid (earliest start to latest end).

    Cells outside a frame's own span are missing.  Column order is frame
    order, then each frame's own column order.  Variable names must be
    disjoint across frames.
    """
    if not frames:
        raise DataError("merge requires at least one frame")
    names: list[str] = []
    for f in frames:
        for name in f.names:
            if name in names:
                raise DataError(f"duplicate variable name across frames: {name!r}")
            names.append(name)

    start = min(f.start_date for f in frames)
    end = max(f.end_date for f in frames)
    n = (end - start).days + 1
    vals = np.full((n, len(names)), np.nan)
    col = 0
    for f in frames:
        off = (f.start_date - start).days
        vals[off : off + f.n_obs, col : col + f.n_vars] = f.values
        col += f.n_vars
    return SeriesFrame(start, tuple(names), vals)


def _missing_runs(isnan: np.ndarray):
    """Yield (start, stop) index pairs of maximal missing runs."""
    i, n = 0, isnan.size
    while i < n:
        if isnan[i]:
            j = i
            while j < n and isnan[j]:
                j += 1
            yield i, j
            i = j
        else:
            i += 1


def impute(
    frame: SeriesFrame,
    policy: str = DEFAULT_IMPUTE_POLICY,
    max_gap: int = DEFAULT_MAX_GAP,
) -> SeriesFrame:
    """Fill missing runs of length <= ``max_gap`` per column.

    ``forward_fill`` repeats the last observed value (leading runs stay
    missing); ``linear`` interpolates between the two flanking values (so
    leading and trailing runs stay missing); ``none`` returns the frame
    unchanged.  Non-missing cells are never modified.
    """
    if policy not in IMPUTE_POLICIES:
        raise DataError(f"unknown imputation policy {policy!r}; choose from {IMPUTE_POLICIES}")
    if max_gap < 0:
        raise DataError(f"max_gap must be non-negative, got {max_gap}")
    if policy == "none" or not frame.has_missing():
        return frame

    vals = np.array(frame.values)
    n = frame.n_obs
    for c in range(frame.n_vars):
        x = vals[:, c]
        for s, e in _missing_runs(np.isnan(x)):
            if e - s > max_gap:
                continue
            if policy == "forward_fill":
                if s > 0:
                    x[s:e] = x[s - 1]
            else:  # linear
                if s > 0 and e < n:
                    x[s:e] = np.linspace(x[s - 1], x[e], e - s + 2)[1:-1]
    return SeriesFrame(frame.start_date, frame.names, vals)


def describe(frame: SeriesFrame, name: str) -> SummaryStats:
    """Summary statistics for one column, computed over non-missing values."""
    col = frame.column(name)
    present = col[~np.isnan(col)]
    if present.size == 0:
        raise DataError(f"column {name!r} has no non-missing values")
    sd = float(np.std(present, ddof=1)) if present.size > 1 else 0.0
    return SummaryStats(
        total=int(col.size),
        missing=int(col.size - present.size),
        mean=float(np.mean(present)),
        sd=sd,
        max=float(np.max(present)),
        min=float(np.min(present)),
    )


def _format_cell(v: float) -> str:
    if math.isnan(v):
        return ""
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(float(v))


def write_frame_csv(frame: SeriesFrame, sink: TextSource) -> None:
    """Write ``date,<name1>,...,<nameK>`` rows; missing cells are empty."""
    with open_text_write(sink) as fh:
        fh.write("date," + ",".join(frame.names) + "\n")
        for i, day in enumerate(frame.dates()):
            cells = ",".join(_format_cell(v) for v in frame.values[i])
            fh.write(f"{day.isoformat()},{cells}\n")


def read_frame_csv(source: TextSource) -> SeriesFrame:
    """Read a frame written by :func:`write_frame_csv` (or any matching CSV).

    The date column must be a strictly contiguous ascending daily grid;
    value cells are floats, empty meaning missing.
    """
    with open_text_read(source) as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[0].strip() != "date" or len(header) < 2:
            raise DataError("frame CSV must start with header 'date,<name1>,...'")
        names = tuple(h.strip() for h in header[1:])
        rows: list[list[float]] = []
        start: dt.date | None = None
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise DataError(
                    f"line {line_no}: expected {len(header)} fields, got {len(row)}"
                )
            day = _parse_date(row[0], line_no)
            if start is None:
                start = day
            elif (day - start).days != len(rows):
                raise DataError(
                    f"line {line_no}: dates must be contiguous daily; "
                    f"expected {(start + dt.timedelta(days=len(rows))).isoformat()}, got {day.isoformat()}"
                )
            parsed = []
            for j, cell in enumerate(row[1:]):
                cell = cell.strip()
                if cell == "":
                    parsed.append(math.nan)
                    continue
                try:
                    parsed.append(float(cell))
                except ValueError:
                    raise DataError(f"line {line_no}: malformed number {cell!r} in {names[j]!r}")
            rows.append(parsed)
    if start is None:
        raise DataError("empty file: no data rows")
    return SeriesFrame(start, names, np.array(rows))
