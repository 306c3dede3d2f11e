"""Recursive-descent reader for the polynomial surface syntax.

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT ("/" INT)? | "X" | "Y" | "(" expr ")"

Multiplication is always explicit, so ``XY`` is an unknown identifier
rather than a product.
"""

from __future__ import annotations

import re

from gmpy2 import mpq, mpz

from .bipoly import BiPoly

MAX_EXPONENT = 10_000

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))", re.S)


class PolySyntaxError(ValueError):
    """Raised with the byte offset of the offending token and what was expected."""

    def __init__(self, message: str, offset: int, expected: frozenset = frozenset()):
        self.offset = offset
        self.expected = expected
        detail = f" (expected one of: {', '.join(sorted(expected))})" if expected else ""
        super().__init__(f"{message} at byte {offset}{detail}")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while text[pos:].strip():
            m = _TOKEN.match(text, pos)
            g = m.lastindex
            kind = ("int", "ident", "op")[g - 1]
            self.tokens.append((kind, m.group(g), m.start(g)))
            pos = m.end()
        self.tokens.append(("eof", "", len(text)))
        self.i = 0

    def byte_offset(self, pos: int) -> int:
        return len(self.text[:pos].encode("utf-8"))

    @property
    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, expected=()):
        raise PolySyntaxError(message, self.byte_offset(self.peek[2]), frozenset(expected))


_ATOM_START = ("integer", "X", "Y", "(", "+", "-")


def _expr(lx: _Lexer) -> BiPoly:
    acc = _term(lx)
    while lx.peek[0] == "op" and lx.peek[1] in "+-":
        op = lx.take()[1]
        rhs = _term(lx)
        acc = acc + rhs if op == "+" else acc - rhs
    return acc


def _term(lx: _Lexer) -> BiPoly:
    acc = _unary(lx)
    while lx.peek[0] == "op" and lx.peek[1] == "*":
        lx.take()
        acc = acc * _unary(lx)
    return acc


def _unary(lx: _Lexer) -> BiPoly:
    if lx.peek[0] == "op" and lx.peek[1] in "+-":
        op = lx.take()[1]
        val = _unary(lx)
        return -val if op == "-" else val
    return _power(lx)


def _power(lx: _Lexer) -> BiPoly:
    base = _atom(lx)
    if lx.peek[0] == "op" and lx.peek[1] == "^":
        lx.take()
        if lx.peek[0] != "int":
            lx.fail("exponent must be a nonnegative integer literal", ("integer",))
        kind, val, pos = lx.take()
        e = int(val)
        if e > MAX_EXPONENT:
            raise PolySyntaxError(f"exponent overflow ({e} > {MAX_EXPONENT})", lx.byte_offset(pos))
        base = base ** e
    return base


def _atom(lx: _Lexer) -> BiPoly:
    kind, val, pos = lx.peek
    if kind == "int":
        lx.take()
        num = mpz(val)
        if lx.peek[0] == "op" and lx.peek[1] == "/":
            lx.take()
            if lx.peek[0] != "int":
                lx.fail("denominator must be an integer literal", ("integer",))
            den = mpz(lx.take()[1])
            if den == 0:
                raise PolySyntaxError("zero denominator", lx.byte_offset(lx.tokens[lx.i - 1][2]))
            return BiPoly.const(mpq(num, den))
        return BiPoly.const(num)
    if kind == "ident":
        if val == "X":
            lx.take()
            return BiPoly.x()
        if val == "Y":
            lx.take()
            return BiPoly.y()
        lx.fail(f"unknown identifier {val!r}", ("X", "Y"))
    if kind == "op" and val == "(":
        lx.take()
        inner = _expr(lx)
        if not (lx.peek[0] == "op" and lx.peek[1] == ")"):
            lx.fail("unbalanced parenthesis", (")", "+", "-", "*", "^"))
        lx.take()
        return inner
    lx.fail("unexpected end of input" if kind == "eof" else f"unexpected {val!r}", _ATOM_START)


def parse_polynomial(text: str) -> BiPoly:
    """Parse ``text`` into an exact BiPoly over Q."""
    lx = _Lexer(text)
    if lx.peek[0] == "eof":
        lx.fail("empty expression", _ATOM_START)
    poly = _expr(lx)
    if lx.peek[0] != "eof":
        lx.fail(f"unexpected {lx.peek[1]!r}", ("+", "-", "*", "^", "end of input"))
    return poly
