"""SQL subset exposing DIRECTLYFOLLOWS as a table operator."""

from .ast import BaseSelect, DfWrap, Predicate, QueryAst
from .engine import DFR_COLUMNS, ArityError, Catalog, QueryError, ResultTable, Table, execute, select_log
from .parser import QuerySyntaxError, parse, render

__all__ = [
    "ArityError",
    "BaseSelect",
    "Catalog",
    "DFR_COLUMNS",
    "DfWrap",
    "Predicate",
    "QueryAst",
    "QueryError",
    "QuerySyntaxError",
    "ResultTable",
    "Table",
    "execute",
    "parse",
    "render",
    "select_log",
]
