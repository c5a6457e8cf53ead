"""Recursive-descent parser and canonical renderer for the query subset.

Grammar (keywords case-insensitive)::

    query      := df_query | select [";"]
    df_query   := SELECT "*" FROM DIRECTLYFOLLOWS "(" select ")" [";"]
    select     := SELECT proj FROM ident [WHERE pred {AND pred}]
    proj       := "*" | ident "," ident "," ident
    pred       := ident ("=" | "<" | "<=" | ">" | ">=") literal
    literal    := integer | 'string'
    ident      := bare_name | "quoted name"
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ast import BaseSelect, DfWrap, Predicate, QueryAst

KEYWORDS = frozenset({"SELECT", "FROM", "WHERE", "AND", "DIRECTLYFOLLOWS"})

IDENT = "identifier"
INT = "integer"
STRING = "string"
EOF = "end of input"
_OPS = ("<=", ">=", "=", "<", ">")
_PUNCT = "*(),;"

_BARE_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"-?\d+")
_SPACE_RE = re.compile(r"\s+")


class QuerySyntaxError(ValueError):
    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        hint = f"; expected one of: {', '.join(sorted(expected))}" if expected else ""
        super().__init__(f"syntax error at byte {offset}: {message}{hint}")
        self.offset = offset
        self.expected = expected


@dataclass(frozen=True)
class Token:
    kind: str  # keyword text, operator/punctuation text, or IDENT/INT/STRING/EOF
    value: object
    offset: int  # byte offset into the UTF-8 query text

    def describe(self) -> str:
        if self.kind in (IDENT, INT, STRING):
            return f"{self.kind} {self.value!r}"
        return self.kind if self.kind == EOF else repr(self.kind)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)

    def boff(i: int) -> int:
        return len(text[:i].encode("utf-8"))

    while True:
        m = _SPACE_RE.match(text, pos)
        if m:
            pos = m.end()
        if pos >= n:
            tokens.append(Token(EOF, None, boff(n)))
            return tokens
        ch = text[pos]
        start = boff(pos)
        if m := _BARE_RE.match(text, pos):
            word = m.group()
            if word.upper() in KEYWORDS:
                tokens.append(Token(word.upper(), word, start))
            else:
                tokens.append(Token(IDENT, word, start))
            pos = m.end()
        elif m := _INT_RE.match(text, pos):
            tokens.append(Token(INT, int(m.group()), start))
            pos = m.end()
        elif ch in "'\"":
            kind = STRING if ch == "'" else IDENT
            buf = []
            i = pos + 1
            while True:
                if i >= n:
                    raise QuerySyntaxError(f"unterminated {kind}", start)
                if text[i] == ch:
                    if i + 1 < n and text[i + 1] == ch:
                        buf.append(ch)
                        i += 2
                        continue
                    break
                buf.append(text[i])
                i += 1
            if kind == IDENT and not buf:
                raise QuerySyntaxError("empty quoted identifier", start)
            tokens.append(Token(kind, "".join(buf), start))
            pos = i + 1
        elif op := next((o for o in _OPS if text.startswith(o, pos)), None):
            tokens.append(Token(op, op, start))
            pos += len(op)
        elif ch in _PUNCT:
            tokens.append(Token(ch, ch, start))
            pos += 1
        else:
            raise QuerySyntaxError(f"unexpected character {ch!r}", start)


class Parser:
    def __init__(self, text: str):
        self._tokens = tokenize(text)
        self._pos = 0
        self._expected: set[str] = set()

    def _peek(self) -> Token:
        return self._tokens[self._pos]

    def _accept(self, kind: str) -> Token | None:
        tok = self._tokens[self._pos]
        if tok.kind == kind:
            self._pos += 1
            self._expected = set()
            return tok
        self._expected.add(kind)
        return None

    def _expect(self, kind: str) -> Token:
        tok = self._accept(kind)
        if tok is None:
            self._fail()
        return tok

    def _fail(self):
        tok = self._peek()
        raise QuerySyntaxError(f"unexpected {tok.describe()}", tok.offset, frozenset(self._expected))

    def parse(self) -> QueryAst:
        self._expect("SELECT")
        columns = self._projection()
        self._expect("FROM")
        if self._accept("DIRECTLYFOLLOWS"):
            if columns is not None:
                raise QuerySyntaxError(
                    "DIRECTLYFOLLOWS must be selected with *", self._tokens[self._pos - 1].offset
                )
            self._expect("(")
            self._expect("SELECT")
            inner = self._select_body()
            self._expect(")")
            ast: QueryAst = DfWrap(inner)
        else:
            ast = self._from_rest(columns)
        self._accept(";")
        self._expect(EOF)
        return ast

    def _select_body(self) -> BaseSelect:
        columns = self._projection()
        self._expect("FROM")
        return self._from_rest(columns)

    def _from_rest(self, columns) -> BaseSelect:
        table = self._expect(IDENT).value
        preds = []
        if self._accept("WHERE"):
            preds.append(self._predicate())
            while self._accept("AND"):
                preds.append(self._predicate())
        return BaseSelect(table, columns, tuple(preds))

    def _projection(self) -> tuple[str, str, str] | None:
        if self._accept("*"):
            return None
        cols = [self._expect(IDENT).value]
        for _ in range(2):
            self._expect(",")
            cols.append(self._expect(IDENT).value)
        return tuple(cols)

    def _predicate(self) -> Predicate:
        column = self._expect(IDENT).value
        for op in _OPS:
            if self._accept(op):
                break
        else:
            self._fail()
        lit = self._accept(INT) or self._accept(STRING)
        if lit is None:
            self._fail()
        return Predicate(column, op, lit.value)


def parse(text: str) -> QueryAst:
    return Parser(text).parse()


def render_ident(name: str) -> str:
    if _BARE_RE.fullmatch(name) and name.upper() not in KEYWORDS:
        return name
    return '"' + name.replace('"', '""') + '"'


def render_literal(value: int | str) -> str:
    if isinstance(value, int):
        return str(value)
    return "'" + value.replace("'", "''") + "'"


def _render_select(s: BaseSelect) -> str:
    proj = "*" if s.columns is None else ", ".join(render_ident(c) for c in s.columns)
    out = f"SELECT {proj} FROM {render_ident(s.table)}"
    if s.predicates:
        out += " WHERE " + " AND ".join(
            f"{render_ident(p.column)} {p.op} {render_literal(p.value)}" for p in s.predicates
        )
    return out


def render(ast: QueryAst) -> str:
    """Canonical text for an AST; ``parse(render(ast)) == ast``."""
    if isinstance(ast, DfWrap):
        return f"SELECT * FROM DIRECTLYFOLLOWS ({_render_select(ast.inner)})"
    return _render_select(ast)
