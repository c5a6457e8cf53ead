"""Insert-time maintenance of the DFR, the way a row trigger would keep it current."""

from __future__ import annotations

from collections import Counter

from sortedcontainers import SortedDict

from .model import Dfr, Event, Pair


class DuplicateEventError(ValueError):
    pass


class DfrMaintainer:
    """Keeps ``current`` equal to the batch DFR of every event inserted so far.

    Each case is stored as a sorted map timestamp -> block, where a block is
    the multiset of activities at that timestamp. Inserting an event touches
    only its own block and the two neighbouring blocks, so the cost is
    O(log m) for the position lookup plus the neighbour block sizes.
    Out-of-order arrivals are fine. Writers must be serialized by the caller.
    """

    def __init__(self):
        self._cases: dict[str, SortedDict] = {}
        self._seen: set[int] = set()
        self._current: dict[Pair, int] = {}
        self.event_count = 0

    def insert_event(self, e: Event) -> dict[Pair, int]:
        """Add one event and return the signed change it caused in the relation."""
        if e.event_id in self._seen:
            raise DuplicateEventError(f"event id {e.event_id} already inserted")
        blocks = self._cases.get(e.case_id)
        if blocks is None:
            blocks = self._cases[e.case_id] = SortedDict()

        pos = blocks.bisect_left(e.timestamp)
        existing = blocks.get(e.timestamp)
        prev = blocks.peekitem(pos - 1)[1] if pos > 0 else None
        nxt_pos = pos + 1 if existing is not None else pos
        nxt = blocks.peekitem(nxt_pos)[1] if nxt_pos < len(blocks) else None

        delta: dict[Pair, int] = {}
        a = e.activity
        if existing is None and prev is not None and nxt is not None:
            # the new block splits an adjacency that used to exist
            for p, cp in prev.items():
                for s, cs in nxt.items():
                    delta[(p, s)] = delta.get((p, s), 0) - cp * cs
        if prev is not None:
            for p, cp in prev.items():
                delta[(p, a)] = delta.get((p, a), 0) + cp
        if nxt is not None:
            for s, cs in nxt.items():
                delta[(a, s)] = delta.get((a, s), 0) + cs
        delta = {k: v for k, v in delta.items() if v}

        if existing is None:
            blocks[e.timestamp] = Counter({a: 1})
        else:
            existing[a] += 1
        self._seen.add(e.event_id)
        self.event_count += 1
        cur = self._current
        for k, v in delta.items():
            nv = cur.get(k, 0) + v
            if nv:
                cur[k] = nv
            else:
                del cur[k]
        return delta

    def snapshot(self) -> Dfr:
        return Dfr(self._current)


def apply_delta(d: Dfr, delta: dict[Pair, int]) -> Dfr:
    out = dict(d.items())
    for k, v in delta.items():
        out[k] = out.get(k, 0) + v
    return Dfr(out)
