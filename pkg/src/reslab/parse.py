"""Text parser for polynomials.

Grammar (whitespace is ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' INT]
    atom   := INT ['/' INT] | NAME | '(' expr ')'

Parentheses and rational literals are accepted as a convenience.
"""
from __future__ import annotations

import re

from .field import CoefficientError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class PolynomialSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class UnknownVariable(PolynomialSyntaxError):
    pass


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group(1) is not None:
            out.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2)))
        else:
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, ring):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise PolynomialSyntaxError(f"expected {op!r}", t[2])

    def expr(self):
        t = self.peek()
        sign = 1
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        result = self.term()
        if sign < 0:
            result = -result
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                result = result + rhs if t[1] == "+" else result - rhs
            else:
                return result

    def term(self):
        result = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            result = result * self.factor()
        return result

    def factor(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "int":
                raise PolynomialSyntaxError("expected integer exponent", e[2])
            return base ** int(e[1])
        return base

    def atom(self):
        t = self.take()
        ring = self.ring
        if t[0] == "int":
            num = int(t[1])
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "int":
                    raise PolynomialSyntaxError("expected integer denominator", d[2])
                try:
                    c = ring.field.from_fraction(num, int(d[1]))
                except CoefficientError as exc:
                    raise CoefficientError(f"{exc} at position {d[2]}") from None
                return ring.const(c)
            return ring.const(num)
        if t[0] == "name":
            if t[1] not in ring.names:
                raise UnknownVariable(f"unknown variable {t[1]!r}", t[2])
            return ring.gen(ring.names.index(t[1]))
        if t[0] == "op" and t[1] == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if t[0] == "op" and t[1] == "-":
            return -self.factor()
        if t[0] == "end":
            raise PolynomialSyntaxError("unexpected end of input", t[2])
        raise PolynomialSyntaxError(f"unexpected {t[1]!r}", t[2])


def parse_polynomial(text: str, ring):
    """Parse text into a Polynomial of ring."""
    if not isinstance(text, str):
        raise TypeError("polynomial text must be a string")
    p = _Parser(text, ring)
    if p.peek()[0] == "end":
        raise PolynomialSyntaxError("empty input", 0)
    result = p.expr()
    t = p.peek()
    if t[0] != "end":
        raise PolynomialSyntaxError(f"unexpected {t[1]!r}", t[2])
    return result
