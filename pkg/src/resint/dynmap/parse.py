"""Parser for map-definition sources and arithmetic expressions.

Grammar (whitespace-insensitive, ``#`` starts a comment line)::

    source := "vars" ids ";" ["params" ids ";"] "f" "=" "(" expr ("," expr)* ")" [";"]
    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ["^" exponent]
    atom   := number | identifier | "(" expr ")"
    exponent := ["-"] integer | "(" ["-"] integer ")"

``**`` is accepted as a synonym for ``^``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..core.multipoly import MultiPoly
from .ratfunc import RationalFunction


class MapSyntaxError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"{message}{where}")


class UndeclaredVariable(MapSyntaxError):
    pass


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^(),;=<>])|(?P<bad>.)"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str):
    tokens = []
    line, line_start = 1, 0
    # strip comment lines (and trailing comments)
    cleaned = []
    for raw in text.split("\n"):
        i = raw.find("#")
        cleaned.append(raw if i < 0 else raw[:i])
    text = "\n".join(cleaned)
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        col = m.start() - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
            continue
        if kind == "ws":
            continue
        if kind == "bad":
            raise MapSyntaxError(f"unexpected character {m.group()!r}", line, col)
        t = m.group()
        if t == "**":
            t = "^"
        tokens.append(Token(kind, t, line, col))
    tokens.append(Token("eof", "", line, m.end() - line_start + 1 if tokens else 1))
    return tokens


class _Parser:
    def __init__(self, tokens, allowed, universe):
        self.toks = tokens
        self.i = 0
        self.allowed = allowed
        self.universe = universe

    @property
    def cur(self):
        return self.toks[self.i]

    def take(self, text=None, kind=None):
        t = self.cur
        if text is not None and t.text != text:
            raise MapSyntaxError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.col)
        if kind is not None and t.kind != kind:
            raise MapSyntaxError(f"expected {kind}, found {t.text or 'end of input'!r}", t.line, t.col)
        self.i += 1
        return t

    def accept(self, text):
        if self.cur.text == text and self.cur.kind == "op":
            self.i += 1
            return True
        return False

    def expr(self):
        left = self.term()
        while self.cur.text in ("+", "-") and self.cur.kind == "op":
            op = self.take().text
            right = self.term()
            left = left + right if op == "+" else left - right
        return left

    def term(self):
        left = self.unary()
        while self.cur.text in ("*", "/") and self.cur.kind == "op":
            op = self.take()
            right = self.unary()
            if op.text == "*":
                left = left * right
            else:
                if right.is_zero():
                    raise MapSyntaxError("division by an identically zero expression", op.line, op.col)
                left = left / right
        return left

    def unary(self):
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.accept("^"):
            k = self.exponent()
            if k < 0 and base.is_zero():
                t = self.cur
                raise MapSyntaxError("negative power of zero", t.line, t.col)
            base = base ** k
        return base

    def exponent(self):
        paren = self.accept("(")
        neg = self.accept("-")
        if not neg:
            self.accept("+")
        t = self.take(kind="num")
        k = int(t.text)
        if paren:
            self.take(")")
        return -k if neg else k

    def atom(self):
        t = self.cur
        if t.kind == "num":
            self.i += 1
            return RationalFunction(MultiPoly.const(int(t.text), self.universe), reduce=False)
        if t.kind == "id":
            self.i += 1
            if self.allowed is not None and t.text not in self.allowed:
                raise UndeclaredVariable(f"undeclared variable {t.text!r}", t.line, t.col)
            return RationalFunction(MultiPoly.var(t.text, self.universe), reduce=False)
        if self.accept("("):
            e = self.expr()
            self.take(")")
            return e
        raise MapSyntaxError(f"unexpected {t.text or 'end of input'!r}", t.line, t.col)


def parse_expr(text: str, variables=None, universe=None) -> RationalFunction:
    """Parse one arithmetic expression into a reduced RationalFunction."""
    universe = tuple(universe if universe is not None else (variables or ()))
    p = _Parser(tokenize(text), set(variables) if variables is not None else None, universe)
    e = p.expr()
    if p.cur.kind != "eof":
        raise MapSyntaxError(f"unexpected {p.cur.text!r}", p.cur.line, p.cur.col)
    return e.reduced()


def _ids(p: _Parser):
    names = [p.take(kind="id").text]
    while p.accept(","):
        names.append(p.take(kind="id").text)
    return names


@dataclass(frozen=True)
class ParsedSource:
    state_vars: tuple
    params: tuple
    components: tuple


def parse_source(text: str) -> ParsedSource:
    toks = tokenize(text)
    p = _Parser(toks, None, ())
    t = p.take(kind="id")
    if t.text != "vars":
        raise MapSyntaxError("source must start with 'vars'", t.line, t.col)
    state = _ids(p)
    p.take(";")
    params = []
    if p.cur.kind == "id" and p.cur.text == "params":
        p.take()
        params = _ids(p)
        p.take(";")
    dup = {v for v in state + params if (state + params).count(v) > 1}
    if dup:
        raise MapSyntaxError(f"duplicate names {sorted(dup)}", t.line, t.col)
    t = p.take(kind="id")
    if t.text != "f":
        raise MapSyntaxError("expected 'f = (...)'", t.line, t.col)
    p.take("=")
    p.take("(")
    p.allowed = set(state) | set(params)
    p.universe = tuple(state) + tuple(params)
    comps = [p.expr()]
    while p.accept(","):
        comps.append(p.expr())
    p.take(")")
    p.accept(";")
    if p.cur.kind != "eof":
        raise MapSyntaxError(f"unexpected {p.cur.text!r}", p.cur.line, p.cur.col)
    if len(comps) != len(state):
        raise MapSyntaxError(f"{len(comps)} components for {len(state)} state variables", t.line, t.col)
    comps = [c.reduced().with_vars(tuple(state) + tuple(params)) for c in comps]
    return ParsedSource(tuple(state), tuple(params), tuple(comps))
