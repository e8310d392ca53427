"""Uniformly sampled multichannel time series and their CSV/JSON encodings.

All indexing is 0-based and in samples. Seconds only appear through
``sample_interval`` and ``start_time``, which are carried for I/O.

CSV layout::

    time,<label1>,...,<labeld>
    0,0.1,1.5
    1,0.2,1.4

JSON layout::

    {"sample_interval": 1.0, "start_time": 0.0, "labels": [...],
     "values": [[row0...], [row1...], ...]}

Floats are written with ``repr`` (shortest string that round-trips), so a
save/load cycle reproduces the values bit for bit.
"""
from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import FormatError, NonUniformTimeError, WvcError

TIME_TOLERANCE = 1e-6


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """One named signal sampled at a fixed interval."""

    label: str
    values: np.ndarray
    sample_interval: float = 1.0
    start_time: float = 0.0

    def __post_init__(self):
        values = _frozen_array(self.values)
        if values.ndim != 1 or values.size < 1:
            raise WvcError(f"series {self.label!r}: values must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(values)):
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            raise WvcError(f"series {self.label!r}: non-finite value at index {bad}")
        if not (self.sample_interval > 0 and math.isfinite(self.sample_interval)):
            raise WvcError(f"series {self.label!r}: sample_interval must be > 0")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "sample_interval", float(self.sample_interval))
        object.__setattr__(self, "start_time", float(self.start_time))

    def __len__(self) -> int:
        return self.values.size

    def __eq__(self, other):
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return (
            self.label == other.label
            and self.sample_interval == other.sample_interval
            and self.start_time == other.start_time
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None

    def with_values(self, values, label: str | None = None) -> "TimeSeries":
        """Copy with new values (and optionally a new label); timing is kept."""
        return TimeSeries(
            self.label if label is None else label,
            values,
            self.sample_interval,
            self.start_time,
        )

    @property
    def times(self) -> np.ndarray:
        return self.start_time + np.arange(len(self)) * self.sample_interval


@dataclass(frozen=True, eq=False)
class MultiSeries:
    """Column-aligned collection of :class:`TimeSeries` sharing one time axis."""

    series: tuple

    def __post_init__(self):
        series = tuple(self.series)
        if not series:
            raise WvcError("MultiSeries needs at least one signal")
        first = series[0]
        seen = set()
        for s in series:
            if s.label in seen:
                raise WvcError(f"duplicate signal label {s.label!r}")
            seen.add(s.label)
            if len(s) != len(first):
                raise WvcError(
                    f"signal {s.label!r} has length {len(s)}, expected {len(first)}"
                )
            if s.sample_interval != first.sample_interval or s.start_time != first.start_time:
                raise WvcError(f"signal {s.label!r} is not on the shared time axis")
        object.__setattr__(self, "series", series)

    @classmethod
    def from_array(
        cls,
        values,
        labels: Sequence[str],
        sample_interval: float = 1.0,
        start_time: float = 0.0,
    ) -> "MultiSeries":
        """Build from a ``(d, L)`` array, one row per signal."""
        values = np.atleast_2d(np.asarray(values, dtype=float))
        if values.shape[0] != len(labels):
            raise WvcError(f"{values.shape[0]} rows but {len(labels)} labels")
        return cls(
            tuple(TimeSeries(lab, row, sample_interval, start_time) for lab, row in zip(labels, values))
        )

    @property
    def length(self) -> int:
        return len(self.series[0])

    @property
    def d(self) -> int:
        return len(self.series)

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.series]

    @property
    def sample_interval(self) -> float:
        return self.series[0].sample_interval

    @property
    def start_time(self) -> float:
        return self.series[0].start_time

    def to_array(self) -> np.ndarray:
        """``(d, L)`` copy of the data."""
        return np.vstack([s.values for s in self.series])

    def __getitem__(self, key) -> TimeSeries:
        if isinstance(key, str):
            for s in self.series:
                if s.label == key:
                    return s
            raise KeyError(key)
        return self.series[key]

    def __iter__(self) -> Iterator[TimeSeries]:
        return iter(self.series)

    def __len__(self) -> int:
        return self.d

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return self.series == other.series

    __hash__ = None


@dataclass(frozen=True)
class Interval:
    """Inclusive sample range ``[t1, t2]``."""

    t1: int
    t2: int

    def __post_init__(self):
        if self.t1 < 0 or self.t2 < self.t1:
            raise WvcError(f"invalid interval [{self.t1}, {self.t2}]: need 0 <= t1 <= t2")

    @classmethod
    def full(cls, length: int) -> "Interval":
        return cls(0, length - 1)

    @property
    def n(self) -> int:
        return self.t2 - self.t1 + 1

    def check(self, length: int) -> "Interval":
        if self.t2 > length - 1:
            raise WvcError(f"interval [{self.t1}, {self.t2}] exceeds series length {length}")
        return self

    @property
    def slice(self) -> slice:
        return slice(self.t1, self.t2 + 1)


def format_float(x: float) -> str:
    """Shortest decimal that round-trips to the same double."""
    x = float(x)
    if x.is_integer() and abs(x) < 1e16 and math.copysign(1.0, x) > 0:
        return str(int(x))
    return repr(x)


def _snap_interval(dt: float) -> float:
    # recovers e.g. 0.1 from 0.09999999999999998 left over by differencing
    return float(f"{dt:.15g}")


def _infer_axis(times: np.ndarray, where: str) -> tuple[float, float]:
    if times.size == 1:
        return 1.0, float(times[0])
    diffs = np.diff(times)
    dt = (times[-1] - times[0]) / (times.size - 1)
    if dt <= 0:
        raise NonUniformTimeError(f"{where}: time axis must be strictly increasing")
    bad = np.flatnonzero(np.abs(diffs - dt) > TIME_TOLERANCE * abs(dt))
    if bad.size:
        row = int(bad[0]) + 3  # 1-based file line of the offending time value
        raise NonUniformTimeError(
            f"{where}: non-uniform time axis at data row {row} "
            f"(step {diffs[bad[0]]!r}, expected {dt!r})"
        )
    return _snap_interval(dt), float(times[0])


def _load_csv(path: str) -> MultiSeries:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise FormatError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    if not header or header[0] != "time":
        raise FormatError(f"{path}: first header column must be 'time', got {header[:1]}")
    if len(header) < 2:
        raise FormatError(f"{path}: no signal columns after 'time'")
    body = [r for r in rows[1:] if r]
    if not body:
        raise FormatError(f"{path}: no data rows")
    data = np.empty((len(body), len(header)))
    for i, row in enumerate(body):
        if len(row) != len(header):
            raise FormatError(
                f"{path}: ragged row {i + 2} has {len(row)} fields, expected {len(header)}"
            )
        for j, cell in enumerate(row):
            try:
                data[i, j] = float(cell)
            except ValueError:
                raise FormatError(
                    f"{path}: non-numeric cell {cell!r} at row {i + 2}, column {header[j]!r}"
                ) from None
    dt, t0 = _infer_axis(data[:, 0], path)
    return MultiSeries.from_array(data[:, 1:].T, header[1:], dt, t0)


def _load_json(path: str) -> MultiSeries:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON ({exc})") from None
    for key in ("sample_interval", "start_time", "labels", "values"):
        if key not in doc:
            raise FormatError(f"{path}: missing key {key!r}")
    labels = list(doc["labels"])
    if not labels:
        raise FormatError(f"{path}: no signal labels")
    rows = doc["values"]
    for i, row in enumerate(rows):
        if len(row) != len(labels):
            raise FormatError(f"{path}: ragged row {i} has {len(row)} values, expected {len(labels)}")
    try:
        data = np.array(rows, dtype=float).reshape(len(rows), len(labels))
    except (TypeError, ValueError):
        raise FormatError(f"{path}: non-numeric entry in 'values'") from None
    return MultiSeries.from_array(data.T, labels, doc["sample_interval"], doc["start_time"])


def _guess_format(path: str) -> str:
    return "json" if str(path).lower().endswith(".json") else "csv"


def load_multiseries(path, format: str | None = None) -> MultiSeries:
    """Read a :class:`MultiSeries` from CSV or JSON (guessed from the extension)."""
    path = os.fspath(path)
    fmt = format or _guess_format(path)
    if fmt == "csv":
        return _load_csv(path)
    if fmt == "json":
        return _load_json(path)
    raise WvcError(f"unknown format {fmt!r}")


def save_multiseries(ms: MultiSeries, path, format: str | None = None) -> None:
    """Write ``ms`` so that :func:`load_multiseries` reproduces it exactly."""
    path = os.fspath(path)
    fmt = format or _guess_format(path)
    data = ms.to_array()
    if fmt == "csv":
        times = ms.series[0].times
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(",".join(["time", *ms.labels]) + "\n")
            fh.writelines(
                ",".join(map(format_float, (t, *col))) + "\n" for t, col in zip(times, data.T)
            )
    elif fmt == "json":
        doc = {
            "sample_interval": ms.sample_interval,
            "start_time": ms.start_time,
            "labels": ms.labels,
            "values": data.T.tolist(),
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh)
    else:
        raise WvcError(f"unknown format {fmt!r}")
