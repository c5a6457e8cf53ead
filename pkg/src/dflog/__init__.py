"""Embedded event-log query engine with a native directly-follows operator."""

from .core import brute_force_dfr, directly_follows, directly_follows_trace, sort_trace
from .dfg import Dfg, build_dfg, to_dot, to_json
from .incremental import DfrMaintainer
from .ingest import CsvConfig, TimeFormat, filter_window, read_csv, write_csv
from .model import Dfr, Event, EventLog, Trace, dfr_to_rows, merge_dfr

__all__ = [
    "CsvConfig",
    "Dfg",
    "Dfr",
    "DfrMaintainer",
    "Event",
    "EventLog",
    "TimeFormat",
    "Trace",
    "brute_force_dfr",
    "build_dfg",
    "dfr_to_rows",
    "directly_follows",
    "directly_follows_trace",
    "filter_window",
    "merge_dfr",
    "read_csv",
    "sort_trace",
    "to_dot",
    "to_json",
    "write_csv",
]
