"""Directly-follows graphs: the DFR plus start/end activity counts, with DOT and JSON output.

JSON layout (keys sorted, two-space indent, trailing newline)::

    {
      "activities": ["A", "B"],
      "edges": [{"freq": 2, "from": "A", "to": "B"}],
      "ends": [{"activity": "B", "count": 1}],
      "starts": [{"activity": "A", "count": 1}]
    }

Arrays are sorted by activity name (edges by ``(from, to)``).
"""

from __future__ import annotations

import json
from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass, field

from .core import directly_follows
from .model import Dfr, EventLog, dfr_to_rows


@dataclass(frozen=True)
class Dfg:
    activities: frozenset[str] = frozenset()
    edges: Dfr = field(default_factory=Dfr)
    start_counts: Mapping[str, int] = field(default_factory=dict)
    end_counts: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        known = self.activities
        for a, b in self.edges:
            if a not in known or b not in known:
                raise ValueError(f"edge ({a}, {b}) references an unknown activity")
        for name in (*self.start_counts, *self.end_counts):
            if name not in known:
                raise ValueError(f"boundary activity {name!r} is not in the activity set")


def boundary_counts(log: EventLog) -> tuple[Counter, Counter]:
    """Activities in the first and last timestamp block of every trace."""
    starts: Counter = Counter()
    ends: Counter = Counter()
    for t in log:
        if not t.events:
            continue
        first = min(e.timestamp for e in t.events)
        last = max(e.timestamp for e in t.events)
        for e in t.events:
            if e.timestamp == first:
                starts[e.activity] += 1
            if e.timestamp == last:
                ends[e.activity] += 1
    return starts, ends


def assemble_dfg(edges: Dfr, activities, starts: Mapping[str, int], ends: Mapping[str, int]) -> Dfg:
    acts = set(activities)
    for a, b in edges:
        acts.add(a)
        acts.add(b)
    return Dfg(frozenset(acts), edges, dict(starts), dict(ends))


def build_dfg(log: EventLog) -> Dfg:
    starts, ends = boundary_counts(log)
    return assemble_dfg(directly_follows(log), log.activities(), starts, ends)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def to_dot(g: Dfg) -> str:
    """Render as a DOT digraph with synthetic ``start``/``end`` nodes; output is sorted."""
    names = sorted(g.activities)
    node = {a: f"a{i}" for i, a in enumerate(names)}
    lines = [
        "digraph dfg {",
        '  start [shape=circle, label="start"];',
        '  end [shape=doublecircle, label="end"];',
    ]
    lines += [f"  {node[a]} [shape=box, label={_quote(a)}];" for a in names]
    lines += [f'  {node[a]} -> {node[b]} [label="{f}"];' for a, b, f in dfr_to_rows(g.edges)]
    lines += [f'  start -> {node[a]} [label="{g.start_counts[a]}"];' for a in sorted(g.start_counts)]
    lines += [f'  {node[a]} -> end [label="{g.end_counts[a]}"];' for a in sorted(g.end_counts)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: Dfg) -> str:
    doc = {
        "activities": sorted(g.activities),
        "edges": [{"from": a, "to": b, "freq": f} for a, b, f in dfr_to_rows(g.edges)],
        "starts": [{"activity": a, "count": g.start_counts[a]} for a in sorted(g.start_counts)],
        "ends": [{"activity": a, "count": g.end_counts[a]} for a in sorted(g.end_counts)],
    }
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def from_json(text: str) -> Dfg:
    doc = json.loads(text)
    return Dfg(
        frozenset(doc["activities"]),
        Dfr({(e["from"], e["to"]): e["freq"] for e in doc["edges"]}),
        {s["activity"]: s["count"] for s in doc["starts"]},
        {s["activity"]: s["count"] for s in doc["ends"]},
    )
