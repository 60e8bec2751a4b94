"""Parsing and canonical printing of polynomial expressions.

Grammar (ASCII, whitespace insensitive):

    expr    :=  term (('+' | '-') term)*
    term    :=  factor ('*' factor)*
    factor  :=  '-' factor | power
    power   :=  atom ('^' INT)?
    atom    :=  INT ('/' INT)?  |  IDENT  |  '(' expr ')'
    IDENT   :=  E2 | E4 | E6 | Delta | t

``Delta`` abbreviates E4^3 - E6^2 and ``t`` is the formal scalar parameter.
Implicit multiplication is rejected: always write ``*``.  ``^`` binds
tightest and takes a plain non-negative integer exponent.

The printer emits exactly this grammar: monomials sorted by weight, then by
exponent triple in descending lexicographic order, coefficients as reduced
fractions (parenthesized polynomials in t when symbolic).  For any
polynomial with coefficients in Q[t], ``parse_poly(format_poly(f)) == f``.
Coefficients with a genuine t-denominator fall outside the grammar and are
rendered as ``(p)/(q)`` for display only.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import DELTA, Poly, monomial_str
from .scalars import T, t_polynomial_coeffs, _pstr

__all__ = ["PolyParseError", "parse_poly", "format_poly"]


class PolyParseError(ValueError):
    """Syntax or name error, carrying the 1-based character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# -- printing -----------------------------------------------------------------


def _coeff_body(c, mono_text: str):
    """Return (negative, body) for one term; body never starts with '-'."""
    coeffs = t_polynomial_coeffs(c)
    if coeffs is None:
        # True rational function in t: display-only form.
        return False, (f"{c}" if mono_text == "1" else f"{c}*{mono_text}")
    if len([x for x in coeffs if x != 0]) == 1:
        k = max(i for i, x in enumerate(coeffs) if x != 0)
        a = coeffs[k]
        neg = a < 0
        mag = abs(a)
        if k == 0:
            prefix = str(mag)
        else:
            tpow = "t" if k == 1 else f"t^{k}"
            prefix = tpow if mag == 1 else f"{mag}*{tpow}"
        if mono_text == "1":
            return neg, prefix
        if k == 0 and mag == 1:
            return neg, mono_text
        return neg, f"{prefix}*{mono_text}"
    # Several powers of t: parenthesize, pulling the sign off the top term.
    neg = coeffs[-1] < 0
    shown = tuple(-x for x in coeffs) if neg else coeffs
    body = f"({_pstr(shown)})"
    if mono_text != "1":
        body += f"*{mono_text}"
    return neg, body


def format_poly(f: Poly) -> str:
    """Canonical text form of a polynomial."""
    if f.is_zero():
        return "0"
    pieces = []
    for m, c in f.terms():
        neg, body = _coeff_body(c, monomial_str(m))
        if not pieces:
            pieces.append("-" + body if neg else body)
        else:
            pieces.append(("- " if neg else "+ ") + body)
    return " ".join(pieces)


# -- lexing -------------------------------------------------------------------

_SYMBOLS = set("+-*^()/")


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("NUM", text[i:j], i + 1))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("IDENT", text[i:j], i + 1))
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(("OP", ch, i + 1))
            i += 1
            continue
        raise PolyParseError(f"unexpected character {ch!r}", i + 1)
    tokens.append(("END", "", n + 1))
    return tokens


# -- parsing ------------------------------------------------------------------

_IDENTIFIERS = {}


def _identifier_table():
    if not _IDENTIFIERS:
        _IDENTIFIERS.update(
            E2=Poly.generator("E2"),
            E4=Poly.generator("E4"),
            E6=Poly.generator("E6"),
            Delta=DELTA,
            t=Poly.constant(T),
        )
    return _IDENTIFIERS


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, symbol: str):
        kind, value, at = self.peek()
        if kind != "OP" or value != symbol:
            raise PolyParseError(f"expected {symbol!r}", at)
        return self.advance()

    def parse(self) -> Poly:
        result = self.expr()
        kind, value, at = self.peek()
        if kind != "END":
            raise PolyParseError(f"unexpected {value!r}", at)
        return result

    def expr(self) -> Poly:
        value = self.term()
        while True:
            kind, op, _ = self.peek()
            if kind == "OP" and op in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if op == "+" else value - rhs
            else:
                return value

    def term(self) -> Poly:
        value = self.factor()
        while True:
            kind, op, _ = self.peek()
            if kind == "OP" and op == "*":
                self.advance()
                value = value * self.factor()
            else:
                return value

    def factor(self) -> Poly:
        kind, op, _ = self.peek()
        if kind == "OP" and op == "-":
            self.advance()
            return -self.factor()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        kind, op, _ = self.peek()
        if kind == "OP" and op == "^":
            self.advance()
            kind, value, at = self.peek()
            if kind != "NUM":
                raise PolyParseError("expected a non-negative integer exponent after '^'", at)
            self.advance()
            return base ** int(value)
        return base

    def atom(self) -> Poly:
        kind, value, at = self.advance()
        if kind == "NUM":
            num = int(value)
            kind2, value2, _ = self.peek()
            if kind2 == "OP" and value2 == "/":
                self.advance()
                kind3, value3, at3 = self.peek()
                if kind3 != "NUM":
                    raise PolyParseError("expected an integer denominator", at3)
                self.advance()
                den = int(value3)
                if den == 0:
                    raise PolyParseError("zero denominator in fraction literal", at3)
                return Poly.constant(Fraction(num, den))
            return Poly.constant(num)
        if kind == "IDENT":
            table = _identifier_table()
            if value not in table:
                raise PolyParseError(f"unknown identifier {value!r}", at)
            return table[value]
        if kind == "OP" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise PolyParseError(
            f"unexpected {'end of input' if kind == 'END' else value!r}", at
        )


def parse_poly(text: str) -> Poly:
    """Parse an expression into a canonical polynomial.

    Raises PolyParseError (with a 1-based position) on syntax errors and on
    unknown identifiers.
    """
    return _Parser(text).parse()
