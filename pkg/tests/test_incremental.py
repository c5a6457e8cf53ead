import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dflog.core import brute_force_dfr, directly_follows
from dflog.incremental import DfrMaintainer, DuplicateEventError, apply_delta
from dflog.model import Dfr, Event, EventLog
from logfactory import random_log


def diff(before: Dfr, after: Dfr) -> dict:
    keys = set(before) | set(after)
    return {k: after.get(k, 0) - before.get(k, 0) for k in keys if after.get(k, 0) != before.get(k, 0)}


def test_first_insert_has_no_pairs():
    m = DfrMaintainer()
    assert m.insert_event(Event(0, "1", "A", 1)) == {}
    assert m.snapshot() == Dfr()


def test_insert_between_breaks_adjacency():
    m = DfrMaintainer()
    before_events = [Event(0, "1", "A", 1), Event(1, "1", "C", 3)]
    for e in before_events:
        m.insert_event(e)
    new = Event(2, "1", "B", 2)
    delta = m.insert_event(new)
    expected = diff(
        brute_force_dfr(EventLog.from_events(before_events)),
        brute_force_dfr(EventLog.from_events(before_events + [new])),
    )
    assert expected == {("A", "C"): -1, ("A", "B"): 1, ("B", "C"): 1}
    assert delta == expected


def test_table1a_replay(table1a, table1b):
    m = DfrMaintainer()
    for e in table1a.events():
        m.insert_event(e)
    assert m.snapshot() == table1b
    assert m.event_count == 7


def test_fresh_snapshot_empty():
    assert DfrMaintainer().snapshot() == Dfr()


def test_snapshot_is_a_copy():
    m = DfrMaintainer()
    m.insert_event(Event(0, "1", "A", 1))
    m.insert_event(Event(1, "1", "B", 2))
    snap = m.snapshot()
    m.insert_event(Event(2, "1", "C", 3))
    assert snap == Dfr({("A", "B"): 1})


def test_duplicate_rejected_without_change():
    m = DfrMaintainer()
    m.insert_event(Event(0, "1", "A", 1))
    m.insert_event(Event(1, "1", "B", 2))
    before = m.snapshot()
    with pytest.raises(DuplicateEventError):
        m.insert_event(Event(1, "1", "C", 3))
    assert m.snapshot() == before
    assert m.event_count == 2


def test_mid_block_insert_pairs_with_both_neighbours():
    m = DfrMaintainer()
    for e in [Event(0, "1", "A", 1), Event(1, "1", "B", 2), Event(2, "1", "C", 3)]:
        m.insert_event(e)
    delta = m.insert_event(Event(3, "1", "X", 2))
    assert delta == {("A", "X"): 1, ("X", "C"): 1}
    assert m.snapshot() == brute_force_dfr(
        EventLog.from_records([("1", "A", 1), ("1", "B", 2), ("1", "C", 3), ("1", "X", 2)])
    )


def test_insert_at_ends():
    m = DfrMaintainer()
    m.insert_event(Event(0, "1", "B", 5))
    assert m.insert_event(Event(1, "1", "A", 1)) == {("A", "B"): 1}
    assert m.insert_event(Event(2, "1", "C", 9)) == {("B", "C"): 1}


def test_cancelling_delta_is_elided():
    # A@1, A@3 then A@2: -(A,A) + (A,A) + (A,A) nets to +1
    m = DfrMaintainer()
    m.insert_event(Event(0, "1", "A", 1))
    m.insert_event(Event(1, "1", "A", 3))
    assert m.insert_event(Event(2, "1", "A", 2)) == {("A", "A"): 1}


@settings(max_examples=60)
@given(st.randoms(use_true_random=False))
def test_every_prefix_matches_batch(rnd):
    log = random_log(rnd)
    events = list(log.events())
    rnd.shuffle(events)
    m = DfrMaintainer()
    prev = m.snapshot()
    for i, e in enumerate(events):
        delta = m.insert_event(e)
        snap = m.snapshot()
        assert apply_delta(prev, delta) == snap
        assert snap == directly_follows(EventLog.from_events(events[: i + 1]))
        prev = snap


def test_order_independence():
    rng = random.Random(5)
    log = random_log(rng, max_events=40)
    batch = directly_follows(log)
    events = list(log.events())
    for _ in range(10):
        rng.shuffle(events)
        m = DfrMaintainer()
        for e in events:
            m.insert_event(e)
        assert m.snapshot() == batch
