"""Recursive-descent parser for polynomial and series expressions.

Grammar (whitespace insignificant, no implicit multiplication):

    expr   := '-'? term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := literal | symbol | '(' expr ')'

Literals are rationals ('3', '3/4', '0.25' -- decimals convert exactly)
and the imaginary unit 'i'.  Symbols are x, y, px, py and t, where t
stands for the noncommutativity parameter (kept ASCII on purpose).
Which symbols are allowed depends on the target kind: 'config' lowers to
a ConfigPoly in x, y; 'phase' adds px, py; 'series' allows x, y, t and
lowers to a ThetaSeries.  The optional leading '-' is the one extension
beyond the grammar above; the canonical printer emits it for a negative
leading term, and parse(print(p)) == p is kept as an invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import ConfigPoly, PhasePoly
from .scalars import GaussianRational
from .series import ThetaSeries

KINDS = ("config", "phase", "series")


class ParseError(ValueError):
    """Lexical, syntactic, or kind error with a 1-based column."""

    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # 'number' | 'imag' | 'symbol' | 'op' | 'end'
    text: str
    column: int
    value: Fraction | None = None


_SYMBOLS = ("px", "py", "x", "y", "t")
_OPS = "+-*^()"


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        col = pos + 1
        if ch in _OPS:
            tokens.append(Token("op", ch, col))
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            if pos < n and text[pos] == "/":
                pos += 1
                den_start = pos
                while pos < n and text[pos].isdigit():
                    pos += 1
                if pos == den_start:
                    raise ParseError("expected digits after '/'", pos)
                value = Fraction(int(text[start : den_start - 1]), int(text[den_start:pos]))
            elif pos < n and text[pos] == ".":
                pos += 1
                frac_start = pos
                while pos < n and text[pos].isdigit():
                    pos += 1
                if pos == frac_start:
                    raise ParseError("expected digits after '.'", pos)
                value = Fraction(text[start:pos])
            else:
                value = Fraction(int(text[start:pos]))
            tokens.append(Token("number", text[start:pos], col, value))
            continue
        if ch.isalpha():
            start = pos
            while pos < n and text[pos].isalnum():
                pos += 1
            word = text[start:pos]
            if word == "i":
                tokens.append(Token("imag", word, col))
            elif word in _SYMBOLS:
                tokens.append(Token("symbol", word, col))
            else:
                raise ParseError(f"unknown symbol '{word}'", col)
            continue
        raise ParseError(f"unexpected character {ch!r}", col)
    tokens.append(Token("end", "", n + 1))
    return tokens


# AST nodes: ('num', Fraction, col), ('imag', col), ('sym', name, col),
# ('neg', node), ('add'|'sub'|'mul', left, right), ('pow', node, uint).


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            raise ParseError(f"expected '{op}'", tok.column)
        return self.advance()

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.column)
        return node

    def expr(self):
        tok = self.peek()
        negate = False
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            negate = True
        node = self.term()
        if negate:
            node = ("neg", node)
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.advance()
                rhs = self.term()
                node = ("add" if tok.text == "+" else "sub", node, rhs)
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.advance()
                node = ("mul", node, self.factor())
            else:
                return node

    def factor(self):
        node = self.base()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            exp_tok = self.peek()
            if exp_tok.kind != "number" or exp_tok.value.denominator != 1 or exp_tok.value < 0:
                raise ParseError("exponent must be a nonnegative integer", exp_tok.column)
            self.advance()
            node = ("pow", node, int(exp_tok.value))
        return node

    def base(self):
        tok = self.advance()
        if tok.kind == "number":
            return ("num", tok.value, tok.column)
        if tok.kind == "imag":
            return ("imag", tok.column)
        if tok.kind == "symbol":
            return ("sym", tok.text, tok.column)
        if tok.kind == "op" and tok.text == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError(
            "expected a literal, symbol, or parenthesized expression"
            if tok.kind != "end"
            else "unexpected end of input",
            tok.column,
        )


@dataclass(frozen=True)
class Expression:
    """A parsed expression lowered to its carrier type.

    kind 'config' -> ConfigPoly, 'phase' -> PhasePoly,
    'series' -> ThetaSeries (of the order given at parse time).
    """

    text: str
    kind: str
    value: object


def _lower_config(node) -> ConfigPoly:
    op = node[0]
    if op == "num":
        return ConfigPoly.constant(GaussianRational(node[1]))
    if op == "imag":
        return ConfigPoly.constant(GaussianRational.i())
    if op == "sym":
        name, col = node[1], node[2]
        if name == "x":
            return ConfigPoly.x()
        if name == "y":
            return ConfigPoly.y()
        raise ParseError(f"symbol '{name}' not allowed in a plane polynomial", col)
    if op == "neg":
        return -_lower_config(node[1])
    if op == "add":
        return _lower_config(node[1]) + _lower_config(node[2])
    if op == "sub":
        return _lower_config(node[1]) - _lower_config(node[2])
    if op == "mul":
        return _lower_config(node[1]) * _lower_config(node[2])
    if op == "pow":
        return _lower_config(node[1]) ** node[2]
    raise AssertionError(f"unhandled node {op}")


def _lower_phase(node) -> PhasePoly:
    op = node[0]
    if op == "num":
        return PhasePoly.constant(GaussianRational(node[1]))
    if op == "imag":
        return PhasePoly.constant(GaussianRational.i())
    if op == "sym":
        name, col = node[1], node[2]
        if name == "t":
            raise ParseError("symbol 't' only allowed in a theta series", col)
        return PhasePoly.generator(name)
    if op == "neg":
        return -_lower_phase(node[1])
    if op == "add":
        return _lower_phase(node[1]) + _lower_phase(node[2])
    if op == "sub":
        return _lower_phase(node[1]) - _lower_phase(node[2])
    if op == "mul":
        return _lower_phase(node[1]) * _lower_phase(node[2])
    if op == "pow":
        return _lower_phase(node[1]) ** node[2]
    raise AssertionError(f"unhandled node {op}")


def _lower_series(node, order: int) -> ThetaSeries:
    op = node[0]
    if op == "num":
        return ThetaSeries.constant(order, GaussianRational(node[1]))
    if op == "imag":
        return ThetaSeries.constant(order, GaussianRational.i())
    if op == "sym":
        name, col = node[1], node[2]
        if name == "x":
            return ThetaSeries(order, [ConfigPoly.x()])
        if name == "y":
            return ThetaSeries(order, [ConfigPoly.y()])
        if name == "t":
            return ThetaSeries.theta(order)
        raise ParseError(f"symbol '{name}' not allowed in a theta series", col)
    if op == "neg":
        return -_lower_series(node[1], order)
    if op == "add":
        return _lower_series(node[1], order) + _lower_series(node[2], order)
    if op == "sub":
        return _lower_series(node[1], order) - _lower_series(node[2], order)
    if op == "mul":
        return _lower_series(node[1], order) * _lower_series(node[2], order)
    if op == "pow":
        out = ThetaSeries.one(order)
        base = _lower_series(node[1], order)
        for _ in range(node[2]):
            out = out * base
        return out
    raise AssertionError(f"unhandled node {op}")


def parse_expression(text: str, kind: str, order: int = 2) -> Expression:
    """Parse and lower an expression; raises ParseError with a column."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    ast = _Parser(_tokenize(text)).parse()
    if kind == "config":
        value = _lower_config(ast)
    elif kind == "phase":
        value = _lower_phase(ast)
    else:
        value = _lower_series(ast, order)
    return Expression(text, kind, value)


def parse_config(text: str) -> ConfigPoly:
    return parse_expression(text, "config").value


def parse_phase(text: str) -> PhasePoly:
    return parse_expression(text, "phase").value


def parse_series(text: str, order: int = 2) -> ThetaSeries:
    return parse_expression(text, "series", order).value
