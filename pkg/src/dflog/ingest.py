"""CSV event-log input/output and collection-window filtering."""

from __future__ import annotations

import csv
import enum
import os
import re
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone

from .model import EventLog, Trace


class DataError(Exception):
    """Input data cannot be turned into an event log."""


class SchemaError(DataError):
    pass


class RowError(DataError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class TimeFormat(enum.Enum):
    EPOCH_MICROS = "epoch_micros_integer"
    ISO8601 = "iso8601_utc"


@dataclass(frozen=True)
class CsvConfig:
    case_column: str = "case"
    activity_column: str = "activity"
    time_column: str = "time"
    # None detects per value: digits are epoch micros, anything else ISO-8601.
    time_format: TimeFormat | None = None
    delimiter: str = ","
    has_header: bool = True

    def __post_init__(self):
        cols = (self.case_column, self.activity_column, self.time_column)
        if len(set(cols)) != 3:
            raise ValueError(f"case/activity/time columns must be distinct, got {cols}")
        if len(self.delimiter) != 1:
            raise ValueError(f"delimiter must be a single character, got {self.delimiter!r}")


_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)
_MICRO = timedelta(microseconds=1)
_INT_RE = re.compile(r"[+-]?\d+")


def parse_iso8601(text: str) -> int:
    """ISO-8601 date or datetime to epoch microseconds; naive values are taken as UTC."""
    s = text.strip()
    if s.endswith(("Z", "z")):
        s = s[:-1] + "+00:00"
    dt = datetime.fromisoformat(s)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return (dt - _EPOCH) // _MICRO


def format_iso8601(micros: int) -> str:
    return (_EPOCH + timedelta(microseconds=micros)).isoformat().replace("+00:00", "Z")


def parse_time(text: str, fmt: TimeFormat | None = None) -> int:
    s = text.strip()
    if fmt is TimeFormat.EPOCH_MICROS or (fmt is None and _INT_RE.fullmatch(s)):
        return int(s)
    return parse_iso8601(s)


def read_csv(path: str | os.PathLike, cfg: CsvConfig = CsvConfig()) -> EventLog:
    """Load a CSV file as an event log; event ids follow file order, no sorting is done."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter=cfg.delimiter)
        if cfg.has_header:
            header = next(reader, None)
            if header is None:
                return EventLog()
            idx = {}
            for col in (cfg.case_column, cfg.activity_column, cfg.time_column):
                if col not in header:
                    raise SchemaError(f"{os.fspath(path)}: missing column {col!r} (header: {header})")
                idx[col] = header.index(col)
            ci, ai, ti = idx[cfg.case_column], idx[cfg.activity_column], idx[cfg.time_column]
        else:
            ci, ai, ti = 0, 1, 2
        width = max(ci, ai, ti) + 1
        records = []
        for row in reader:
            line = reader.line_num
            if not row:
                continue
            if len(row) < width:
                raise RowError(line, f"expected at least {width} fields, got {len(row)}")
            case, act, raw = row[ci], row[ai], row[ti]
            if not case:
                raise RowError(line, "empty case id")
            if not act:
                raise RowError(line, "empty activity")
            try:
                ts = parse_time(raw, cfg.time_format)
            except ValueError:
                raise RowError(line, f"unparseable timestamp {raw!r}") from None
            records.append((case, act, ts))
    return EventLog.from_records(records)


def write_csv(log: EventLog, path: str | os.PathLike, cfg: CsvConfig = CsvConfig()) -> int:
    """Write the log in event order; timestamps as epoch micros unless cfg asks for ISO. Returns row count."""
    iso = cfg.time_format is TimeFormat.ISO8601
    n = 0
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, delimiter=cfg.delimiter)
        if cfg.has_header:
            w.writerow([cfg.case_column, cfg.activity_column, cfg.time_column])
        for e in log.events():
            w.writerow([e.case_id, e.activity, format_iso8601(e.timestamp) if iso else e.timestamp])
            n += 1
    return n


def filter_window(log: EventLog, t_start: int, t_end: int) -> EventLog:
    """Keep events with ``t_start <= timestamp <= t_end``; traces left empty are dropped."""
    if t_start >= t_end:
        raise ValueError(f"window start {t_start} must precede end {t_end}")
    traces = []
    for t in log:
        kept = [e for e in t.events if t_start <= e.timestamp <= t_end]
        if kept:
            traces.append(Trace(t.case_id, kept))
    return EventLog(traces, window=(t_start, t_end))
