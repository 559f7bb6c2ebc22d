"""Parsing and printing of Laurent polynomial expressions.

The surface syntax is deliberately small: integer and a/b rational
literals, variables x, y, z (synonyms for x1, x2, x3) and x1 through x9,
explicit * for products, ^ for integer powers (negative exponents allowed
on monomial bases), parentheses, and unary minus. There is no general
division. format_expression is a right inverse of parse_expression, which
the command line tools rely on for round-tripping.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .laurent import LaurentPolynomial

__all__ = ["parse_expression", "format_expression", "ExpressionError"]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x[1-9]|[xyz])|(?P<op>\*\*|[-+*^()]))"
)

_VAR_INDEX = {"x": 1, "y": 2, "z": 3}


class ExpressionError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:].strip()
            if not rest:
                break
            raise ExpressionError(f"unexpected input at {rest[:10]!r}")
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", m.group("num")))
        elif m.group("var"):
            tokens.append(("var", m.group("var")))
        else:
            op = m.group("op")
            tokens.append(("op", "^" if op == "**" else op))
    return tokens


def _variable_index(name: str) -> int:
    if name in _VAR_INDEX:
        return _VAR_INDEX[name]
    return int(name[1:])


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]], rank: int):
        self.tokens = tokens
        self.pos = 0
        self.rank = rank

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise ExpressionError("unexpected end of expression")
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.take()
        if tok != ("op", op):
            raise ExpressionError(f"expected {op!r}, found {tok[1]!r}")

    def parse_sum(self) -> LaurentPolynomial:
        value = self.parse_term()
        while True:
            tok = self.peek()
            if tok == ("op", "+"):
                self.take()
                value = value + self.parse_term()
            elif tok == ("op", "-"):
                self.take()
                value = value - self.parse_term()
            else:
                return value

    def parse_term(self) -> LaurentPolynomial:
        value = self.parse_factor()
        while self.peek() == ("op", "*"):
            self.take()
            value = value * self.parse_factor()
        return value

    def parse_factor(self) -> LaurentPolynomial:
        sign = 1
        while self.peek() == ("op", "-"):
            self.take()
            sign = -sign
        value = self.parse_power()
        return value if sign == 1 else -value

    def parse_power(self) -> LaurentPolynomial:
        base = self.parse_atom()
        if self.peek() == ("op", "^"):
            self.take()
            exponent = self.parse_exponent()
            try:
                return base**exponent
            except ValueError as exc:
                raise ExpressionError(str(exc)) from None
        return base

    def parse_exponent(self) -> int:
        parenthesized = self.peek() == ("op", "(")
        if parenthesized:
            self.take()
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        kind, text = self.take()
        if kind != "num" or "/" in text:
            raise ExpressionError("exponents must be integers")
        if parenthesized:
            self.expect_op(")")
        return sign * int(text)

    def parse_atom(self) -> LaurentPolynomial:
        kind, text = self.take()
        if kind == "num":
            return LaurentPolynomial.constant(self.rank, Fraction(text))
        if kind == "var":
            return LaurentPolynomial.variable(self.rank, _variable_index(text) - 1)
        if (kind, text) == ("op", "("):
            value = self.parse_sum()
            self.expect_op(")")
            return value
        raise ExpressionError(f"unexpected token {text!r}")


def parse_expression(text: str, rank: int | None = None) -> LaurentPolynomial:
    """Parse an expression string into a Laurent polynomial.

    The rank defaults to the largest variable index that appears (0 for a
    constant expression); pass rank explicitly to embed into more variables.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ExpressionError("empty expression")
    seen = [_variable_index(t) for k, t in tokens if k == "var"]
    inferred = max(seen) if seen else 0
    if rank is None:
        rank = inferred
    elif rank < inferred:
        raise ExpressionError(f"expression uses x{inferred} but rank is {rank}")
    parser = _Parser(tokens, rank)
    value = parser.parse_sum()
    if parser.peek() is not None:
        raise ExpressionError(f"trailing input at {parser.peek()[1]!r}")
    return value


def _variable_name(index: int, rank: int) -> str:
    if rank <= 3:
        return "xyz"[index]
    return f"x{index + 1}"


def _format_monomial(exponent: tuple[int, ...], rank: int) -> str:
    parts = []
    for i, e in enumerate(exponent):
        if e == 0:
            continue
        name = _variable_name(i, rank)
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_expression(p: LaurentPolynomial) -> str:
    """Canonical expression string: terms in increasing lexicographic
    exponent order, explicit * between coefficient and variables."""
    if p.is_zero():
        return "0"
    pieces: list[str] = []
    for e, c in sorted(p.terms.items()):
        mono = _format_monomial(e, p.rank)
        if not mono:
            body = str(c) if c > 0 else str(-c)
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+{body}" if c > 0 else f"-{body}")
    return "".join(pieces)
