"""Recursive-descent parser for operator expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER | 'x' | 'D' | '(' expr ')'

Products are noncommutative (D*x == x*D + 1), so juxtaposition is not
allowed and D may not occur in a divisor.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..arith import Poly, RatFunc
from ..diffop import DiffOp, multiply
from ..errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, x, D, op chars, EOF
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    out = []
    pos = 0
    n = len(src)
    while pos < n:
        m = _TOKEN.match(src, pos)
        if m is None:
            break
        if m.group(1) is not None:
            out.append(Token("NUM", m.group(1), m.start(1)))
        else:
            ch = m.group(2)
            start = m.start(2)
            if ch in "+-*/^()xD":
                out.append(Token(ch, ch, start))
            elif ch.isspace():
                pass
            else:
                raise ParseError(f"unexpected character {ch!r}", start,
                                 ("number", "x", "D", "(", "+", "-", "*", "/", "^", ")"))
        pos = m.end()
    out.append(Token("EOF", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def parse(self) -> DiffOp:
        v = self.expr()
        if self.tok.kind != "EOF":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos,
                             ("+", "-", "*", "/", "end of input"))
        return v

    def expr(self) -> DiffOp:
        v = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self) -> DiffOp:
        v = self.unary()
        while self.tok.kind in ("*", "/"):
            op = self.advance()
            rhs = self.unary()
            if op.kind == "*":
                v = multiply(v, rhs)
            else:
                if rhs.order > 0:
                    raise ParseError("divisor must not contain D", op.pos, ("D-free expression",))
                if not rhs:
                    raise ParseError("division by zero", op.pos, ("nonzero divisor",))
                v = multiply(v, DiffOp([rhs[0].inverse()]))
        return v

    def unary(self) -> DiffOp:
        if self.tok.kind == "-":
            self.advance()
            return -self.unary()
        if self.tok.kind == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> DiffOp:
        base = self.atom()
        if self.tok.kind == "^":
            self.advance()
            t = self.tok
            if t.kind != "NUM" or not t.text.isdigit():
                raise ParseError("exponent must be a non-negative integer", t.pos, ("integer",))
            self.advance()
            n = int(t.text)
            out = DiffOp([1])
            for _ in range(n):
                out = multiply(out, base)
            return out
        return base

    def atom(self) -> DiffOp:
        t = self.tok
        if t.kind == "NUM":
            self.advance()
            return DiffOp([Fraction(t.text)])
        if t.kind == "x":
            self.advance()
            return DiffOp([RatFunc(Poly.x())])
        if t.kind == "D":
            self.advance()
            return DiffOp.D()
        if t.kind == "(":
            self.advance()
            v = self.expr()
            if self.tok.kind != ")":
                raise ParseError("unbalanced parenthesis", self.tok.pos, (")",))
            self.advance()
            return v
        what = "end of input" if t.kind == "EOF" else repr(t.text)
        raise ParseError(f"unexpected {what}", t.pos, ("number", "x", "D", "("))


def parse(src: str) -> DiffOp:
    """Parse an operator expression into normal form (coefficients left of D)."""
    return _Parser(src).parse()


def parse_ratfunc(src: str) -> RatFunc:
    op = parse(src)
    if op.order > 0:
        raise ParseError("expected a rational function (no D)", 0, ("D-free expression",))
    return op[0]
