"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace is insignificant)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | IDENT | "(" expr ")"

Juxtaposition is not multiplication.  Over F_{p^d} with ``d > 1`` the
identifier ``w`` denotes the adjoined root of the field modulus, unless ``w``
is itself one of the variables.
"""

from __future__ import annotations

import re

from .errors import PolySyntaxError, UnknownVariable
from .field import GEN_NAME, FieldSpec
from .poly import MultiPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")


def tokenize(text):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {text[bad]!r}", bad, text)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("ident", m.group(2), start))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, n))
    return out


class _Parser:
    def __init__(self, text, variables, field):
        self.text = text
        self.vars = tuple(variables)
        self.field = field
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return PolySyntaxError(msg, tok[2], self.text)

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        e = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return e

    def expr(self):
        acc = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self):
        t = self.peek()
        if t[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if t[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            t = self.peek()
            if t[0] != "int":
                raise self.error("exponent must be a nonnegative integer")
            self.take()
            return base ** t[1]
        return base

    def atom(self):
        t = self.take()
        F = self.field
        if t[0] == "int":
            return MultiPoly.constant(F, self.vars, F.elem(t[1]))
        if t[0] == "ident":
            name = t[1]
            if name in self.vars:
                return MultiPoly.var(F, self.vars, name)
            if name == GEN_NAME and F.d > 1:
                return MultiPoly.constant(F, self.vars, F.generator())
            raise UnknownVariable(f"unknown variable {name!r}", t[2], self.text)
        if t[:2] == ("op", "("):
            e = self.expr()
            if self.peek()[:2] != ("op", ")"):
                raise self.error("expected ')'")
            self.take()
            return e
        if t[0] == "end":
            raise self.error("unexpected end of expression", t)
        raise self.error(f"unexpected token {t[1]!r}", t)


def parse_poly(text: str, variables, field: FieldSpec) -> MultiPoly:
    """Parse ``text`` into a polynomial over ``field`` in ``variables``."""
    return _Parser(text, variables, field).parse()


def parse_elem(text: str, field: FieldSpec) -> int:
    """Parse a field element (an expression without variables)."""
    f = parse_poly(text, (), field)
    return f.constant_term()
