from __future__ import annotations

from dataclasses import dataclass
from typing import Union

COMPARATORS = ("=", "<", "<=", ">", ">=")


@dataclass(frozen=True)
class Predicate:
    column: str
    op: str
    value: int | str


@dataclass(frozen=True)
class BaseSelect:
    table: str
    columns: tuple[str, str, str] | None = None  # None means SELECT *
    predicates: tuple[Predicate, ...] = ()


@dataclass(frozen=True)
class DfWrap:
    inner: BaseSelect


QueryAst = Union[BaseSelect, DfWrap]
