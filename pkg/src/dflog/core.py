"""The native directly-follows operator and its brute-force oracle."""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from operator import itemgetter

from .model import Dfr, Event, EventLog, Pair, Trace

# (timestamp, event_id)
_ORDER_KEY = itemgetter(3, 0)


@dataclass(frozen=True)
class BlockCursor:
    """Index bounds of two adjacent timestamp blocks in a sorted trace.

    ``[sa, ea]`` is the antecedent block and ``[sc, ec]`` the consequent
    block; both ranges are inclusive.
    """

    sa: int
    ea: int
    sc: int
    ec: int

    def __post_init__(self):
        if not 0 <= self.sa <= self.ea < self.sc <= self.ec:
            raise ValueError(f"invalid block cursor {self}")


def sort_trace(t: Trace) -> Trace:
    return Trace(t.case_id, sorted(t.events, key=_ORDER_KEY))


def block_cursors(events: Sequence[Event]) -> Iterator[BlockCursor]:
    """Yield the cursor of every adjacent block pair of an already sorted event sequence."""
    n = len(events)
    if n == 0:
        return
    sa = ea = 0
    a_time = events[sa].timestamp
    while ea + 1 < n and events[ea + 1].timestamp == a_time:
        ea += 1
    sc = ec = ea + 1
    while ec < n:
        c_time = events[sc].timestamp
        while ec + 1 < n and events[ec + 1].timestamp == c_time:
            ec += 1
        yield BlockCursor(sa, ea, sc, ec)
        sa, ea = sc, ec
        sc = ec = ea + 1


def _accumulate(times: Sequence[int], acts: Sequence[str], counts: dict[Pair, int]) -> None:
    # Block walk over a sorted trace; equal-timestamp events never pair.
    n = len(times)
    if n == 0:
        return
    sa = ea = 0
    a_time = times[0]
    while ea + 1 < n and times[ea + 1] == a_time:
        ea += 1
    sc = ec = ea + 1
    get = counts.get
    while ec < n:
        c_time = times[sc]
        while ec + 1 < n and times[ec + 1] == c_time:
            ec += 1
        if sa == ea and sc == ec:
            key = (acts[sa], acts[sc])
            counts[key] = get(key, 0) + 1
        else:
            for i in range(sa, ea + 1):
                a = acts[i]
                for j in range(sc, ec + 1):
                    key = (a, acts[j])
                    counts[key] = get(key, 0) + 1
        sa, ea = sc, ec
        sc = ec = ea + 1


def _accumulate_trace(events: Sequence[Event], counts: dict[Pair, int]) -> None:
    ordered = sorted(events, key=_ORDER_KEY)
    _accumulate([e.timestamp for e in ordered], [e.activity for e in ordered], counts)


def directly_follows_trace(t: Trace) -> Dfr:
    counts: dict[Pair, int] = {}
    _accumulate_trace(t.events, counts)
    return Dfr(counts)


def directly_follows(log: EventLog) -> Dfr:
    """Compute the DFR of a log: sort each case, then pair adjacent timestamp blocks.

    Cost is dominated by the per-case sort, O(|E| log |E|) in the worst case
    and linear when cases are already in time order.
    """
    counts: dict[Pair, int] = {}
    for t in log:
        _accumulate_trace(t.events, counts)
    return Dfr(counts)


def brute_force_dfr(log: EventLog) -> Dfr:
    """Reference DFR by exhaustive search over event pairs.

    An event pair (x, y) of one case counts when x happens strictly before y
    and no event of the case happens strictly between them. Cubic per case;
    only meant for checking other implementations on small logs.
    """
    counts: dict[Pair, int] = {}
    for t in log:
        evs = t.events
        for x in evs:
            for y in evs:
                if not x.timestamp < y.timestamp:
                    continue
                if any(x.timestamp < z.timestamp < y.timestamp for z in evs):
                    continue
                key = (x.activity, y.activity)
                counts[key] = counts.get(key, 0) + 1
    return Dfr(counts)
