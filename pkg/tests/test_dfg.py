import random

import pytest

from dflog.core import directly_follows
from dflog.dfg import Dfg, build_dfg, from_json, to_dot, to_json
from dflog.model import Dfr, EventLog
from dotcheck import check_dot
from logfactory import random_log


def test_table1a_dfg(table1a, table1b):
    g = build_dfg(table1a)
    assert g.edges == table1b
    assert g.start_counts == {"Send request": 2}
    assert g.end_counts == {"Accept": 1, "Reject": 1}
    assert len(g.activities) == 5


def test_empty_dfg():
    g = build_dfg(EventLog())
    assert g == Dfg()


def test_single_block_trace():
    g = build_dfg(EventLog.from_records([("1", "A", 5), ("1", "B", 5)]))
    assert g.edges == Dfr()
    assert g.start_counts == {"A": 1, "B": 1}
    assert g.end_counts == {"A": 1, "B": 1}


def test_isolated_activities_kept():
    g = build_dfg(EventLog.from_records([("1", "A", 1), ("2", "B", 1)]))
    assert g.activities == {"A", "B"}


def test_unknown_activity_rejected():
    with pytest.raises(ValueError):
        Dfg(frozenset({"A"}), Dfr({("A", "B"): 1}))


def test_dot_empty():
    text = to_dot(Dfg())
    assert text.startswith("digraph dfg {")
    nodes, edges = check_dot(text)
    assert nodes == {"start", "end"} and edges == []


def test_dot_table1a(table1a):
    text = to_dot(build_dfg(table1a))
    nodes, edges = check_dot(text)
    activity_edges = [(a, b) for a, b in edges if a != "start" and b != "end"]
    assert len(activity_edges) == 5
    assert '[label="2"]' in text


def test_dot_escapes_names():
    g = build_dfg(EventLog.from_records([("1", 'say "hi"', 1), ("1", "back\\slash", 2)]))
    check_dot(to_dot(g))


def test_json_empty():
    assert to_json(Dfg()) == '{\n  "activities": [],\n  "edges": [],\n  "ends": [],\n  "starts": []\n}\n'


def test_json_table1a(table1a):
    import json

    doc = json.loads(to_json(build_dfg(table1a)))
    assert len(doc["edges"]) == 5
    assert {"from": "Send request", "to": "Check application", "freq": 2} in doc["edges"]


def test_json_canonical(table1a):
    text = to_json(build_dfg(table1a))
    assert to_json(from_json(text)) == text


def test_random_logs():
    rng = random.Random(21)
    for _ in range(100):
        log = random_log(rng)
        g = build_dfg(log)
        assert g.edges == directly_follows(log)
        check_dot(to_dot(g))
        text = to_json(g)
        assert to_json(from_json(text)) == text
        assert from_json(text) == g
        assert sum(g.start_counts.values()) >= len(log)
        assert sum(g.end_counts.values()) >= len(log)


def test_strict_traces_boundary_totals():
    log = EventLog.from_records([(c, "ABC"[i % 3], i) for c in "xyz" for i in range(4)])
    g = build_dfg(log)
    assert sum(g.start_counts.values()) == sum(g.end_counts.values()) == 3


def test_serialisation_deterministic(table1a):
    assert to_dot(build_dfg(table1a)) == to_dot(build_dfg(EventLog(reversed(list(table1a)))))
