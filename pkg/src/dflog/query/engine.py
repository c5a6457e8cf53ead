from __future__ import annotations

import operator
from collections.abc import Callable, Sequence
from dataclasses import dataclass

from ..core import directly_follows
from ..ingest import parse_iso8601
from ..model import Event, EventLog, dfr_to_rows
from .ast import BaseSelect, DfWrap, Predicate, QueryAst

DFR_COLUMNS = ("Event_Label_P", "Event_Label_S", "Frequency")
ROLES = ("case", "activity", "time")

_OPS: dict[str, Callable] = {
    "=": operator.eq,
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
}


class QueryError(ValueError):
    pass


class ArityError(QueryError):
    pass


@dataclass(frozen=True)
class Table:
    name: str
    log: EventLog
    columns: tuple[str, str, str]  # names bound to the case, activity and time roles

    def role_of(self, column: str) -> str:
        folded = column.casefold()
        for role, name in zip(ROLES, self.columns):
            if name.casefold() == folded:
                return role
        raise QueryError(f"unknown column {column!r} in table {self.name!r} (columns: {', '.join(self.columns)})")


class Catalog:
    """Registered tables; names are matched case-insensitively."""

    def __init__(self):
        self._tables: dict[str, Table] = {}

    def register(self, name: str, log: EventLog, columns: Sequence[str] = ROLES) -> Table:
        key = name.casefold()
        if key in self._tables:
            raise QueryError(f"table {name!r} already registered")
        cols = tuple(columns)
        if len(cols) != 3 or len({c.casefold() for c in cols}) != 3:
            raise QueryError(f"table {name!r} needs three distinct column names, got {cols}")
        table = self._tables[key] = Table(name, log, cols)
        return table

    def lookup(self, name: str) -> Table:
        try:
            return self._tables[name.casefold()]
        except KeyError:
            raise QueryError(f"unknown table {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name.casefold() in self._tables


@dataclass(frozen=True)
class ResultTable:
    columns: tuple[str, ...]
    rows: list[tuple]


def _compile(pred: Predicate, table: Table) -> Callable[[Event], bool]:
    role = table.role_of(pred.column)
    cmp = _OPS[pred.op]
    value = pred.value
    if role == "time":
        if isinstance(value, str):
            try:
                value = parse_iso8601(value)
            except ValueError:
                raise QueryError(f"cannot read {pred.value!r} as a timestamp") from None
        return lambda e: cmp(e.timestamp, value)
    value = str(value)
    if role == "case":
        return lambda e: cmp(e.case_id, value)
    return lambda e: cmp(e.activity, value)


def select_log(s: BaseSelect, cat: Catalog) -> EventLog:
    """Events of the source table that satisfy every predicate, as a log."""
    table = cat.lookup(s.table)
    tests = [_compile(p, table) for p in s.predicates]
    if not tests:
        return table.log
    return EventLog.from_events(e for e in table.log.events() if all(t(e) for t in tests))


def _bind_roles(s: BaseSelect, table: Table) -> tuple[str, ...]:
    if s.columns is None:
        return ROLES
    roles = tuple(table.role_of(c) for c in s.columns)
    return roles


def execute(ast: QueryAst, cat: Catalog) -> ResultTable:
    if isinstance(ast, DfWrap):
        inner = ast.inner
        table = cat.lookup(inner.table)
        if len(set(_bind_roles(inner, table))) != 3:
            raise ArityError(
                "DIRECTLYFOLLOWS needs a source with three columns: the case, the activity, and the timestamp"
            )
        log = select_log(inner, cat)
        return ResultTable(DFR_COLUMNS, dfr_to_rows(directly_follows(log)))

    table = cat.lookup(ast.table)
    roles = _bind_roles(ast, table)
    names = table.columns if ast.columns is None else ast.columns
    log = select_log(ast, cat)
    pick = {"case": 1, "activity": 2, "time": 3}
    idx = [pick[r] for r in roles]
    rows = [tuple(e[i] for i in idx) for e in log.events()]
    return ResultTable(tuple(names), rows)
