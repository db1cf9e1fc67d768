"""Text syntax for exact coefficients, and renderers for reports.

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ['^' ['-'] integer]
    atom   := integer | 't' | '(' expr ')'

Everything parses into the exact field Q(t); callers coerce the result into
the ring they need.  Examples: ``(1-3*t+t^2)/(1-t)^2``, ``1/2``, ``t^-1+1``.
"""
from __future__ import annotations

import re

from .errors import InputError, ZeroDenominator
from .rational import RationalFunction
from .series import TruncatedSeries

_TOKEN = re.compile(r"\s*(\d+|t|\^|\*|/|\+|-|\(|\))")


def _tokenize(text: str, where: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InputError(where, f"unexpected character {text[pos]!r} in {text!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, where, text):
        self.tokens = tokens
        self.i = 0
        self.where = where
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, why):
        raise InputError(self.where, f"{why} in expression {self.text!r}")

    def expr(self) -> RationalFunction:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        value = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RationalFunction:
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero:
                    raise ZeroDenominator(f"division by zero in {self.text!r}")
                value = value / rhs
        return value

    def factor(self) -> RationalFunction:
        value = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            tok = self.take()
            if tok is None or not tok.isdigit():
                self.fail("exponent must be an integer")
            n = int(tok)
            if neg and value.is_zero:
                raise ZeroDenominator(f"zero to a negative power in {self.text!r}")
            value = value ** (-n if neg else n)
        return value

    def atom(self) -> RationalFunction:
        tok = self.take()
        if tok is None:
            self.fail("unexpected end of expression")
        if tok == "(":
            value = self.expr()
            if self.take() != ")":
                self.fail("missing closing parenthesis")
            return value
        if tok == "t":
            return RationalFunction.t()
        if tok.isdigit():
            return RationalFunction(int(tok))
        if tok == "-":
            return -self.atom()
        if tok == "+":
            return self.atom()
        self.fail(f"unexpected token {tok!r}")


def parse_rational(text, where="<expr>") -> RationalFunction:
    """Parse a coefficient expression into the exact field Q(t)."""
    if isinstance(text, int):
        return RationalFunction(text)
    if not isinstance(text, str):
        raise InputError(where, f"expected a string or integer, got {type(text).__name__}")
    tokens = _tokenize(text, where)
    if not tokens:
        raise InputError(where, "empty expression")
    parser = _Parser(tokens, where, text)
    value = parser.expr()
    if parser.peek() is not None:
        parser.fail(f"trailing tokens starting at {parser.peek()!r}")
    return value


def parse_entry(text, ring, where="<entry>"):
    """Parse and coerce an entry into the given ring."""
    from .errors import RingMismatch

    value = parse_rational(text, where)
    try:
        return ring.coerce(value)
    except RingMismatch as exc:
        raise InputError(where, str(exc)) from exc


def render_coeff(c) -> str:
    return str(c)


def render_series(s: TruncatedSeries) -> str:
    """Render as ``c_m*t^m + ... + O(t^N)`` with exact coefficients."""
    return str(s)


def render_entry(x) -> str:
    if isinstance(x, TruncatedSeries):
        return render_series(x)
    return str(x)


def series_coefficient_strings(s: TruncatedSeries):
    """Exact coefficient strings for machine reports: {degree: "coeff"}."""
    return {str(d): render_coeff(c) for d, c in s.items()}
