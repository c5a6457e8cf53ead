"""Synthetic event logs and the two scaling constructions used by the benchmarks.

``gen_relabel`` grows the number of activities at a fixed event count;
``gen_merge_cases`` grows the number of events at a fixed activity set.
"""

from __future__ import annotations

import random

from .model import Event, EventLog, Trace

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1

BASE_TIME = 1_500_000_000_000_000  # 2017-07-14 in epoch micros
_HOUR = 3_600_000_000


def stable_hash(text: str) -> int:
    """64-bit FNV-1a over the UTF-8 bytes; identical on every platform and run."""
    h = _FNV_OFFSET
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * _FNV_PRIME) & _MASK64
    return h


def gen_relabel(log: EventLog, k: int) -> EventLog:
    """Suffix every activity with ``#p`` where p is its case's hash bucket modulo k."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    traces = []
    for t in log:
        suffix = f"#{stable_hash(t.case_id) % k}"
        traces.append(
            Trace(t.case_id, [Event(e.event_id, e.case_id, e.activity + suffix, e.timestamp) for e in t.events])
        )
    return EventLog(traces)


def gen_merge_cases(log: EventLog, k: int) -> EventLog:
    """Replace every trace by k back-to-back copies of itself.

    Copy i is shifted by ``i * (span + 1)`` where span is the time range of
    the whole log, so consecutive copies never overlap or share a timestamp.
    Events are renumbered in output order.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k == 1:
        return log
    bounds = log.time_bounds()
    if bounds is None:
        return log
    step = bounds[1] - bounds[0] + 1
    next_id = 0
    traces = []
    for t in log:
        evs = []
        for i in range(k):
            shift = i * step
            evs.extend(
                Event(next_id + j, e.case_id, e.activity, e.timestamp + shift) for j, e in enumerate(t.events)
            )
            next_id += len(t.events)
        traces.append(Trace(t.case_id, evs))
    return EventLog(traces)


def synth_base_log(
    seed: int, n_cases: int, n_activities: int, mean_len: int, branching: int = 3, fixed_len: bool = False
) -> EventLog:
    """Random-walk log over a fixed, seeded transition structure.

    Each activity gets ``branching`` random successors; a case starts at one of
    the first few activities and walks for a geometric number of steps with
    mean ``mean_len`` (exactly ``mean_len`` events when ``fixed_len``).
    Timestamps strictly increase within a case.
    """
    if n_activities < 1 or mean_len < 1:
        raise ValueError("n_activities and mean_len must be >= 1")
    rng = random.Random(seed)
    width = len(str(n_activities - 1))
    labels = [f"a{i:0{width}d}" for i in range(n_activities)]
    fanout = min(branching, n_activities)
    succ = [rng.sample(range(n_activities), fanout) for _ in range(n_activities)]
    stop = 1.0 / mean_len
    records = []
    for c in range(n_cases):
        case = f"case{c + 1}"
        cur = rng.randrange(fanout)
        ts = BASE_TIME + rng.randrange(1000 * _HOUR)
        records.append((case, labels[cur], ts))
        length = 1
        while (length < mean_len) if fixed_len else (rng.random() >= stop):
            length += 1
            cur = rng.choice(succ[cur])
            ts += rng.randint(1, _HOUR)
            records.append((case, labels[cur], ts))
    return EventLog.from_records(records)
