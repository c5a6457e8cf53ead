"""Non-native ways of computing the DFR, kept for comparison with the native operator.

* ``nested_join_dfr``: self-join with a correlated "nothing in between"
  subquery, evaluated by plain nested loops (cubic in trace length).
* ``nested_join_dfr_indexed``: the same query answered through a per-case
  sorted index, so the successor block is found by binary search.
* ``sorted_stream_dfr``: the database only sorts; every row is shipped to
  the client, which computes the relation while consuming the stream.
"""

from __future__ import annotations

import queue
import threading
from bisect import bisect_right
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numba
import numpy as np

from .model import Dfr, EventLog, Pair

Row = tuple[str, str, int]  # (case_id, activity, timestamp)

FETCH_SIZE = 4096
CHANNEL_DEPTH = 8


class MissingIndexError(RuntimeError):
    pass


@dataclass(frozen=True)
class FlatTable:
    rows: Sequence[Row]
    index: Mapping[str, Sequence[int]] | None = field(default=None, compare=False)

    @classmethod
    def from_log(cls, log: EventLog) -> FlatTable:
        return cls([(e.case_id, e.activity, e.timestamp) for e in log.events()])

    def with_index(self) -> FlatTable:
        """Copy of the table with a per-case index sorted by (timestamp, row order)."""
        by_case: dict[str, list[int]] = {}
        for i, row in enumerate(self.rows):
            by_case.setdefault(row[0], []).append(i)
        rows = self.rows
        for ids in by_case.values():
            ids.sort(key=lambda i: (rows[i][2], i))
        return FlatTable(self.rows, by_case)

    def to_log(self) -> EventLog:
        return EventLog.from_records(self.rows)


def _group_rows(rows: Iterable[Row]) -> dict[str, list[Row]]:
    groups: dict[str, list[Row]] = {}
    for row in rows:
        groups.setdefault(row[0], []).append(row)
    return groups


# Intentionally cubic in trace length: it is the slow comparison target.
# Every candidate pair runs a full scan for an in-between row; do not add
# early exits, sorting or indexing here.
@numba.njit(cache=True)
def _nested_scan(times, codes, out):
    m = times.shape[0]
    for x in range(m):
        tx = times[x]
        for y in range(m):
            ty = times[y]
            if ty <= tx:
                continue
            between = 0
            for z in range(m):
                tz = times[z]
                if tx < tz and tz < ty:
                    between += 1
            if between == 0:
                out[codes[x], codes[y]] += 1


def nested_join_dfr(t: FlatTable) -> Dfr:
    counts: dict[Pair, int] = {}
    for case_rows in _group_rows(t.rows).values():
        labels = sorted({r[1] for r in case_rows})
        code = {a: i for i, a in enumerate(labels)}
        times = np.array([r[2] for r in case_rows], dtype=np.int64)
        codes = np.array([code[r[1]] for r in case_rows], dtype=np.int64)
        out = np.zeros((len(labels), len(labels)), dtype=np.int64)
        _nested_scan(times, codes, out)
        for i, j in zip(*np.nonzero(out)):
            key = (labels[i], labels[j])
            counts[key] = counts.get(key, 0) + int(out[i, j])
    return Dfr(counts)


def nested_join_dfr_indexed(t: FlatTable) -> Dfr:
    if t.index is None:
        raise MissingIndexError("nested_join_dfr_indexed needs a per-case index; call FlatTable.with_index()")
    rows = t.rows
    counts: dict[Pair, int] = {}
    get = counts.get
    for ids in t.index.values():
        times = [rows[i][2] for i in ids]
        acts = [rows[i][1] for i in ids]
        m = len(ids)
        for x in range(m):
            sc = bisect_right(times, times[x])
            if sc == m:
                continue
            ec = bisect_right(times, times[sc], sc)
            a = acts[x]
            for y in range(sc, ec):
                key = (a, acts[y])
                counts[key] = get(key, 0) + 1
    return Dfr(counts)


_DONE = object()


def sort_stage(t: FlatTable) -> list[Row]:
    """Producer side: rows ordered by (case, timestamp, row order)."""
    rows = t.rows
    order = sorted(range(len(rows)), key=lambda i: (rows[i][0], rows[i][2], i))
    return [rows[i] for i in order]


def stream_stage(ordered: Sequence[Row]) -> tuple[Dfr, int]:
    """Ship sorted rows through a bounded channel; the consumer builds the DFR block by block."""
    channel: queue.Queue = queue.Queue(maxsize=CHANNEL_DEPTH)

    def produce():
        for lo in range(0, len(ordered), FETCH_SIZE):
            channel.put(ordered[lo : lo + FETCH_SIZE])
        channel.put(_DONE)

    producer = threading.Thread(target=produce, name="sorted-stream-producer", daemon=True)
    producer.start()

    counts: dict[Pair, int] = {}
    get = counts.get
    transferred = 0
    case = None
    block_time = None
    prev_block: list[str] = []
    block: list[str] = []
    while (chunk := channel.get()) is not _DONE:
        transferred += len(chunk)
        for c, act, ts in chunk:
            if c != case:
                case, block_time = c, ts
                prev_block, block = [], [act]
                continue
            if ts != block_time:
                prev_block, block = block, []
                block_time = ts
            block.append(act)
            for p in prev_block:
                key = (p, act)
                counts[key] = get(key, 0) + 1
    producer.join()
    return Dfr(counts), transferred


def sorted_stream_dfr(t: FlatTable) -> tuple[Dfr, int]:
    """Sort on the producer side, stream all rows to a consumer that builds the DFR.

    Returns the relation and the number of rows that crossed the channel.
    """
    return stream_stage(sort_stage(t))
