"""Text syntax for scalars and polynomials.

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' int)?
    atom   := rational | 'q' | name | 'x'digit | 'qint(' int ')' | '(' expr ')'

Products are explicit; ``x2*x1`` is normal-ordered to ``q*x1*x2``.  Negative
powers are accepted on nonzero scalars and invertible parameters only.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

from .coeff import NonInvertibleDivisor, ParamScalar, qint
from .qspace import QPolynomial, QSpace


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int | None = None):
        super().__init__(msg if pos is None else f"{msg} (at position {pos})")
        self.pos = pos


class ExprSyntaxError(ParseError):
    pass


class UnknownSymbol(ParseError):
    pass


class NegativeGeneratorPower(ParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))")
_GEN = re.compile(r"x([1-9])$")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character {text[pos:].lstrip()[0]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, space: QSpace, params: Mapping[str, bool]):
        self.toks = _tokenize(text)
        self.i = 0
        self.space = space
        self.params = params

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value: str):
        kind, v, pos = self.take()
        if v != value:
            raise ExprSyntaxError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def parse(self) -> QPolynomial:
        p = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"expected operator or end of input, found {v!r}", pos)
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            _, op, _ = self.take()
            r = self.term()
            p = p + r if op == "+" else p - r
        return p

    def term(self):
        p = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            p = p * self.unary()
        return p

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        return self.power()

    def integer(self) -> int:
        kind, v, pos = self.peek()
        paren = v == "("
        if paren:
            self.take()
        neg = False
        if self.peek()[:2] == ("op", "-"):
            self.take()
            neg = True
        kind, v, pos = self.take()
        if kind != "num" or "/" in v:
            raise ExprSyntaxError(f"expected an integer exponent, found {v or 'end of input'!r}", pos)
        if paren:
            self.expect(")")
        return -int(v) if neg else int(v)

    def power(self):
        start = self.peek()[2]
        base, is_gen = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            k = self.integer()
            if k < 0:
                if is_gen or any(sum(m) for m in base.terms):
                    raise NegativeGeneratorPower("negative power of an expression in the generators", start)
                c = base.coefficient((0,) * self.space.n)
                try:
                    inv = c.inverse() if not c.is_scalar() else ParamScalar.const(c.scalar().inverse())
                except (NonInvertibleDivisor, ZeroDivisionError) as exc:
                    raise ParseError(str(exc), start) from exc
                return _const_poly(self.space, inv ** (-k))
            return base ** k
        return base

    def atom(self):
        kind, v, pos = self.take()
        sp = self.space
        if kind == "num":
            return sp.const(Fraction(v)), False
        if kind == "op" and v == "(":
            p = self.expr()
            self.expect(")")
            return p, False
        if kind == "name":
            if v == "q":
                return _const_poly(sp, sp.qpow(1)), False
            if v == "qint":
                self.expect("(")
                k = self.integer()
                self.expect(")")
                return sp.const(qint(k)), False
            g = _GEN.match(v)
            if g:
                i = int(g.group(1))
                if i > sp.n:
                    raise UnknownSymbol(f"generator {v} outside rank {sp.n}", pos)
                return sp.gen(i), True
            if v not in self.params:
                raise UnknownSymbol(f"unknown symbol {v!r}", pos)
            return _const_poly(sp, ParamScalar.param(v, self.params[v])), False
        raise ExprSyntaxError(f"expected a number, symbol or '(', found {v or 'end of input'!r}", pos)


def _const_poly(space: QSpace, c: ParamScalar) -> QPolynomial:
    return QPolynomial(space, {(0,) * space.n: c})


def parse_expr(text: str, space: QSpace | int, params: Mapping[str, bool] | None = None) -> QPolynomial:
    """Parse ``text`` as an element of A_q(n) with the declared parameters."""
    if isinstance(space, int):
        space = QSpace(space)
    return _Parser(str(text), space, dict(params or {})).parse()


def parse_scalar(text: str, params: Mapping[str, bool] | None = None) -> ParamScalar:
    p = parse_expr(text, QSpace(1), params)
    if any(sum(m) for m in p.terms):
        raise ExprSyntaxError("expected a scalar, found an expression in the generators", 0)
    return p.coefficient((0,))
