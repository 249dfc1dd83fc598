"""Recursive-descent parser for series text.

Accepts the core grammar (sums of coefficient*monomial terms) and the usual
conveniences on top of it: ``-``, parentheses and integer powers of any
parenthesised expression, e.g. ``(T1*T2)^2`` or ``(w+1)*T1``.
"""

from __future__ import annotations

import re

from .errors import SeriesSyntaxError, VariableOutOfRange
from .field import FieldElement
from .series import RingContext, Series

_TOKEN = re.compile(r"\s*(?:(\d+)|(T\d*)|(w)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", m.group(1), start))
        elif m.group(2):
            tokens.append(("var", m.group(2), start))
        elif m.group(3):
            tokens.append(("w", "w", start))
        else:
            ch = m.group(4)
            if ch not in "+-*^()":
                raise SeriesSyntaxError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: RingContext):
        self.ctx = ctx
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise SeriesSyntaxError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> Series:
        sign = 1
        if self.peek()[0] in "+-" and self.peek()[0] != "end":
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Series:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Series:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("int")
            base = base ** int(tok[1])
        return base

    def atom(self) -> Series:
        kind, val, pos = self.peek()
        ctx = self.ctx
        if kind == "int":
            self.take()
            return ctx.constant(int(val))
        if kind == "w":
            self.take()
            if ctx.field.m == 1:
                raise SeriesSyntaxError("'w' needs an extension field (m > 1)", pos)
            return ctx.constant(FieldElement(ctx.field, ctx.field.generator))
        if kind == "var":
            self.take()
            idx = val[1:]
            if idx == "":
                if ctx.d != 1:
                    raise VariableOutOfRange(f"bare 'T' needs d = 1 (position {pos})")
                return ctx.var(1)
            n = int(idx)
            if not 1 <= n <= ctx.d:
                raise VariableOutOfRange(f"{val} out of range for d = {ctx.d} (position {pos})")
            return ctx.var(n)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "-":
            self.take()
            return -self.factor()
        raise SeriesSyntaxError(f"unexpected {val or 'end of input'!r}", pos)


def parse_series(text: str, ctx: RingContext) -> Series:
    """Parse text into a series of precision ctx.N."""
    parser = _Parser(text, ctx)
    result = parser.expr()
    parser.take("end")
    return Series(ctx, result.coeffs, ctx.N)
