"""Core event-log types: events, traces, logs and the directly-follows relation."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from types import MappingProxyType
from typing import NamedTuple

Pair = tuple[str, str]


class Event(NamedTuple):
    event_id: int
    case_id: str
    activity: str
    timestamp: int  # epoch microseconds


class Trace:
    """All events of one case, in stored order."""

    __slots__ = ("case_id", "events")

    def __init__(self, case_id: str, events: Iterable[Event] = ()):
        self.case_id = case_id
        self.events: tuple[Event, ...] = tuple(events)
        for e in self.events:
            if e.case_id != case_id:
                raise ValueError(f"event {e.event_id} belongs to case {e.case_id!r}, not {case_id!r}")

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Trace):
            return NotImplemented
        return self.case_id == other.case_id and self.events == other.events

    def __repr__(self) -> str:
        return f"Trace({self.case_id!r}, {len(self.events)} events)"


class EventLog:
    """A set of traces keyed by case id, optionally bound to a collection window.

    Trace order follows insertion (first appearance of the case).
    """

    __slots__ = ("traces", "window")

    def __init__(self, traces: Iterable[Trace] = (), window: tuple[int, int] | None = None):
        by_case: dict[str, Trace] = {}
        for t in traces:
            if t.case_id in by_case:
                raise ValueError(f"duplicate case id {t.case_id!r}")
            by_case[t.case_id] = t
        if window is not None:
            lo, hi = window
            if lo >= hi:
                raise ValueError(f"window start {lo} must precede end {hi}")
            for t in by_case.values():
                for e in t.events:
                    if not lo <= e.timestamp <= hi:
                        raise ValueError(f"event {e.event_id} at {e.timestamp} lies outside window {window}")
        self.traces: Mapping[str, Trace] = MappingProxyType(by_case)
        self.window = window

    @classmethod
    def from_records(
        cls, records: Iterable[tuple[str, str, int]], first_id: int = 0
    ) -> EventLog:
        """Build a log from ``(case, activity, timestamp)`` rows, numbering events in row order."""
        grouped: dict[str, list[Event]] = {}
        for eid, (case, activity, ts) in enumerate(records, start=first_id):
            if not case or not activity:
                raise ValueError(f"row {eid - first_id}: case and activity must be non-empty")
            grouped.setdefault(case, []).append(Event(eid, case, activity, ts))
        return cls(Trace(case, evs) for case, evs in grouped.items())

    @classmethod
    def from_events(cls, events: Iterable[Event]) -> EventLog:
        grouped: dict[str, list[Event]] = {}
        for e in events:
            grouped.setdefault(e.case_id, []).append(e)
        return cls(Trace(case, evs) for case, evs in grouped.items())

    def __len__(self) -> int:
        return len(self.traces)

    def __iter__(self) -> Iterator[Trace]:
        return iter(self.traces.values())

    def events(self) -> Iterator[Event]:
        for t in self.traces.values():
            yield from t.events

    @property
    def n_events(self) -> int:
        return sum(len(t) for t in self.traces.values())

    def activities(self) -> set[str]:
        return {e.activity for e in self.events()}

    def time_bounds(self) -> tuple[int, int] | None:
        stamps = [e.timestamp for e in self.events()]
        if not stamps:
            return None
        return min(stamps), max(stamps)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EventLog):
            return NotImplemented
        return self.window == other.window and dict(self.traces) == dict(other.traces)

    def __repr__(self) -> str:
        return f"EventLog({len(self.traces)} traces, {self.n_events} events, window={self.window})"


class Dfr(Mapping[Pair, int]):
    """Immutable directly-follows relation: (antecedent, consequent) -> frequency.

    Zero entries are dropped on construction; negative or non-integer
    frequencies are rejected.
    """

    __slots__ = ("_counts",)

    def __init__(self, counts: Mapping[Pair, int] | Iterable[tuple[Pair, int]] = ()):
        items = counts.items() if isinstance(counts, Mapping) else counts
        clean: dict[Pair, int] = {}
        for pair, freq in items:
            if not isinstance(freq, int) or freq < 0:
                raise ValueError(f"frequency of {pair} must be a non-negative integer, got {freq!r}")
            if freq:
                clean[pair] = freq
        self._counts = clean

    @property
    def counts(self) -> Mapping[Pair, int]:
        return MappingProxyType(self._counts)

    def __getitem__(self, pair: Pair) -> int:
        return self._counts[pair]

    def __iter__(self) -> Iterator[Pair]:
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __hash__(self) -> int:
        return hash(frozenset(self._counts.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{a}->{b}: {f}" for a, b, f in dfr_to_rows(self))
        return f"Dfr({{{body}}})"

    def mass(self) -> int:
        """Total frequency over all pairs."""
        return sum(self._counts.values())

    def relabel(self, mapping: Mapping[str, str]) -> Dfr:
        out: dict[Pair, int] = {}
        for (a, b), f in self._counts.items():
            key = (mapping[a], mapping[b])
            out[key] = out.get(key, 0) + f
        return Dfr(out)


def merge_dfr(a: Mapping[Pair, int], b: Mapping[Pair, int]) -> Dfr:
    """Pointwise sum of two relations; DFRs of case-disjoint logs add up this way."""
    out = dict(a.items())
    for pair, freq in b.items():
        out[pair] = out.get(pair, 0) + freq
    return Dfr(out)


def dfr_to_rows(d: Mapping[Pair, int]) -> list[tuple[str, str, int]]:
    """Three-column rows (antecedent, consequent, frequency) in lexicographic pair order."""
    return [(a, b, f) for (a, b), f in sorted(d.items()) if f]
