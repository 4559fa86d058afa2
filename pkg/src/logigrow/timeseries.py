"""Ingestion of OWID-style COVID-19 CSV data.

The loader filters one location and date window out of an
``owid-covid-data`` style file (comma separated, UTF-8, header row,
empty string = missing) and exposes the four count variables as clean
per-variable time series indexed by day number.
"""

from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass
from datetime import date, timedelta

import numpy as np

from .errors import (
    AllMissing,
    LocationNotFound,
    MalformedRow,
    MissingColumn,
    MissingValue,
    SplitOutOfRange,
)

#: Canonical column order: the six variables of the study data set.
REQUIRED_COLUMNS = (
    "location",
    "date",
    "total_cases",
    "new_cases",
    "total_deaths",
    "new_deaths",
)

COUNT_VARIABLES = ("total_cases", "new_cases", "total_deaths", "new_deaths")

#: Cumulative variables default to forward-fill, daily ones to drop.
CUMULATIVE_VARIABLES = ("total_cases", "total_deaths")

MISSING_POLICIES = ("error", "forward_fill", "drop")


class MonotonicityWarning(UserWarning):
    """A cumulative variable decreased (upstream data revision)."""


@dataclass(frozen=True)
class Observation:
    """One calendar day of counts; ``None`` marks a missing cell."""

    date: date
    total_cases: float | None = None
    new_cases: float | None = None
    total_deaths: float | None = None
    new_deaths: float | None = None

    def __post_init__(self):
        for name in COUNT_VARIABLES:
            value = getattr(self, name)
            if value is None:
                continue
            if not np.isfinite(value) or value < 0:
                raise ValueError(
                    f"{name} must be finite and >= 0, got {value!r}"
                )

    def get(self, variable: str) -> float | None:
        if variable not in COUNT_VARIABLES:
            raise ValueError(f"unknown variable {variable!r}")
        return getattr(self, variable)


@dataclass(frozen=True)
class Dataset:
    """Observations for one location, strictly increasing by date."""

    location: str
    observations: tuple[Observation, ...]

    def __post_init__(self):
        object.__setattr__(self, "observations", tuple(self.observations))
        dates = [o.date for o in self.observations]
        for prev, cur in zip(dates, dates[1:]):
            if cur <= prev:
                raise ValueError(
                    f"observations not strictly increasing by date at {cur}"
                )

    def __len__(self):
        return len(self.observations)

    @property
    def start_date(self) -> date:
        return self.observations[0].date

    @property
    def end_date(self) -> date:
        return self.observations[-1].date

    def to_csv(self) -> str:
        """Canonical re-export: exactly the six columns, missing = empty."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REQUIRED_COLUMNS)
        for obs in self.observations:
            row = [self.location, obs.date.isoformat()]
            for name in COUNT_VARIABLES:
                value = obs.get(name)
                row.append("" if value is None else format(value, "g"))
            writer.writerow(row)
        return buf.getvalue()


@dataclass(frozen=True)
class TimeSeries:
    """Ordered (day index, value) observations for one variable.

    ``t`` counts whole days since ``start_date``.  Series coming out of
    :func:`extract_series` start at t = 0; slices produced by
    :func:`train_test_split` keep their original day indices so that a
    model fitted on the training part extrapolates on a continuous
    clock.
    """

    label: str
    start_date: date
    t: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t, dtype=np.int64).copy()
        y = np.asarray(self.y, dtype=np.float64).copy()
        if t.ndim != 1 or y.ndim != 1 or t.shape != y.shape:
            raise ValueError("t and y must be 1-d arrays of equal length")
        if t.size and (np.any(np.diff(t) <= 0) or t[0] < 0):
            raise ValueError("t must be non-negative and strictly increasing")
        if not np.all(np.isfinite(y)):
            raise ValueError("every y must be finite")
        t.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "y", y)

    def __len__(self):
        return int(self.t.size)

    @property
    def values(self) -> list[tuple[int, float]]:
        return [(int(ti), float(yi)) for ti, yi in zip(self.t, self.y)]

    def index_of(self, day: date) -> int:
        """Day index of a calendar date on this series' clock."""
        return (day - self.start_date).days

    def date_of(self, index: int) -> date:
        return self.start_date + timedelta(days=int(index))


def _reader_from(raw):
    """Accept bytes, CSV text, or an open (binary or text) file."""
    if isinstance(raw, bytes):
        return io.StringIO(raw.decode("utf-8"))
    if isinstance(raw, str):
        return io.StringIO(raw)
    if hasattr(raw, "read"):
        data = raw.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        return io.StringIO(data)
    raise TypeError("raw must be bytes, str or a readable file object")


def _parse_count(cell: str, column: str, row_number: int) -> float | None:
    cell = cell.strip()
    if cell == "":
        return None
    try:
        value = float(cell)
    except ValueError:
        raise MalformedRow(
            f"row {row_number}: non-numeric {column} cell {cell!r}",
            row_number=row_number,
        ) from None
    if not np.isfinite(value) or value < 0:
        raise MalformedRow(
            f"row {row_number}: {column} must be finite and >= 0, got {cell!r}",
            row_number=row_number,
        )
    return value


def parse_owid_csv(
    raw,
    location: str,
    date_from: date | None = None,
    date_to: date | None = None,
) -> Dataset:
    """Parse an OWID-schema CSV down to one location and date window.

    Rows whose location differs are skipped without validation; extra
    columns are ignored.  Empty numeric cells become missing values.
    Raises :class:`MissingColumn`, :class:`MalformedRow` (with the
    offending row number) or :class:`LocationNotFound` when the
    selection is empty, which includes an inverted date range.
    """
    reader = csv.DictReader(_reader_from(raw))
    header = reader.fieldnames or []
    for column in REQUIRED_COLUMNS:
        if column not in header:
            raise MissingColumn(f"required column {column!r} absent from header")

    picked: list[tuple[date, int, Observation]] = []
    for row_number, row in enumerate(reader, start=2):
        if (row.get("location") or "").strip() != location:
            continue
        raw_date = (row.get("date") or "").strip()
        try:
            day = date.fromisoformat(raw_date)
        except ValueError:
            raise MalformedRow(
                f"row {row_number}: unparseable date {raw_date!r}",
                row_number=row_number,
            ) from None
        if date_from is not None and day < date_from:
            continue
        if date_to is not None and day > date_to:
            continue
        counts = {
            name: _parse_count(row.get(name) or "", name, row_number)
            for name in COUNT_VARIABLES
        }
        picked.append((day, row_number, Observation(date=day, **counts)))

    if not picked:
        raise LocationNotFound(
            f"no rows for location {location!r} in the requested date range"
        )

    picked.sort(key=lambda item: item[0])
    for (d1, _, _), (d2, n2, _) in zip(picked, picked[1:]):
        if d1 == d2:
            raise MalformedRow(
                f"row {n2}: duplicate date {d2.isoformat()} for {location!r}",
                row_number=n2,
            )
    return Dataset(location=location, observations=tuple(o for _, _, o in picked))


def extract_series(
    dataset: Dataset,
    variable: str,
    missing_policy: str | None = None,
) -> TimeSeries:
    """Pull one variable out of a dataset as a day-indexed series.

    ``t`` is whole days since the first retained observation, not row
    number, so calendar gaps in the input stay visible.  The ``drop``
    policy removes missing days without re-indexing; ``forward_fill``
    carries the last seen value; ``error`` refuses any gap.  When
    ``missing_policy`` is None, cumulative variables forward-fill and
    daily variables drop.
    """
    if len(dataset) == 0:
        raise ValueError("dataset is empty")
    if missing_policy is None:
        missing_policy = (
            "forward_fill" if variable in CUMULATIVE_VARIABLES else "drop"
        )
    if missing_policy not in MISSING_POLICIES:
        raise ValueError(f"unknown missing policy {missing_policy!r}")

    pairs = [(obs.date, obs.get(variable)) for obs in dataset.observations]
    if all(value is None for _, value in pairs):
        raise AllMissing(f"variable {variable!r} has no non-missing value")

    if missing_policy == "error":
        for day, value in pairs:
            if value is None:
                raise MissingValue(
                    f"{variable} missing on {day.isoformat()} with policy 'error'"
                )
        kept = pairs
    elif missing_policy == "drop":
        kept = [(day, value) for day, value in pairs if value is not None]
    else:  # forward_fill: leading gap has nothing to carry, so it is dropped
        kept = []
        last = None
        for day, value in pairs:
            if value is not None:
                last = value
            if last is not None:
                kept.append((day, last))

    start = kept[0][0]
    t = np.array([(day - start).days for day, _ in kept], dtype=np.int64)
    y = np.array([value for _, value in kept], dtype=np.float64)

    if variable in CUMULATIVE_VARIABLES and np.any(np.diff(y) < 0):
        warnings.warn(
            f"cumulative variable {variable!r} decreases at least once "
            "(upstream revision); values kept as reported",
            MonotonicityWarning,
            stacklevel=2,
        )
    return TimeSeries(label=variable, start_date=start, t=t, y=y)


def train_test_split(
    series: TimeSeries, split_date_index: int
) -> tuple[TimeSeries, TimeSeries]:
    """Split at a day index: train t < split, test t >= split.

    The test part keeps its original day indices so predictions run on
    a continuous clock.
    """
    if len(series) < 2:
        raise SplitOutOfRange("series too short to split")
    max_t = int(series.t[-1])
    if not 0 < split_date_index <= max_t:
        raise SplitOutOfRange(
            f"split index {split_date_index} outside (0, {max_t}]"
        )
    mask = series.t < split_date_index
    train = TimeSeries(
        label=series.label,
        start_date=series.start_date,
        t=series.t[mask],
        y=series.y[mask],
    )
    test = TimeSeries(
        label=series.label,
        start_date=series.start_date,
        t=series.t[~mask],
        y=series.y[~mask],
    )
    return train, test
