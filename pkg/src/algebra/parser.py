"""Polynomial text grammar: parsing and canonical rendering."""

import re
from typing import List, Optional, Tuple

from ..errors import PolynomialSyntaxError, UnknownVariableError
from .poly import MPoly
from .rings import Ring

TOKEN_PATTERN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:/\d+)?)
  | (?P<ident>[a-zA-Z][a-zA-Z0-9]*)
  | (?P<op>[-+*^()])
""", re.VERBOSE)

Token = Tuple[str, str, int]


def tokenize(text: str) -> List[Token]:
    """Split text into (kind, value, offset) tokens; offsets are byte offsets."""
    tokens: List[Token] = []
    pos = 0
    # byte offsets differ from character offsets only for non-ASCII input
    byte_offset = [0]
    for ch in text:
        byte_offset.append(byte_offset[-1] + len(ch.encode('utf-8')))
    while pos < len(text):
        match = TOKEN_PATTERN.match(text, pos)
        if not match:
            raise PolynomialSyntaxError(f"Unexpected character {text[pos]!r}", byte_offset[pos])
        kind = match.lastgroup
        if kind != 'ws':
            tokens.append((kind, match.group(), byte_offset[pos]))
        pos = match.end()
    tokens.append(('end', '', byte_offset[len(text)]))
    for (k1, v1, _), (k2, v2, off) in zip(tokens, tokens[1:]):
        if k1 == 'number' and k2 in ('number', 'ident'):
            raise PolynomialSyntaxError(f"Missing '*' before {v2!r}", off)
    return tokens


class _Parser:
    """Recursive descent over: expr := ['-'|'+'] term (('+'|'-') term)*,
    term := factor ('*' factor)*, factor := atom ('^' integer)?,
    atom := number | identifier | '(' expr ')'."""

    def __init__(self, text: str, ring: Ring):
        self.ring = ring
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, value: str):
        kind, got, offset = self.take()
        if got != value:
            raise PolynomialSyntaxError(f"Expected {value!r}, found {got or 'end of input'!r}", offset)

    def parse(self) -> MPoly:
        if self.peek()[0] == 'end':
            raise PolynomialSyntaxError("Empty polynomial", self.peek()[2])
        result = self.expr()
        kind, value, offset = self.peek()
        if kind != 'end':
            raise PolynomialSyntaxError(f"Unexpected {value!r}", offset)
        return result

    def expr(self) -> MPoly:
        sign = 1
        if self.peek()[1] in '+-' and self.peek()[0] == 'op':
            sign = -1 if self.take()[1] == '-' else 1
        result = self.term()
        if sign < 0:
            result = -result
        while self.peek()[0] == 'op' and self.peek()[1] in ('+', '-'):
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == '+' else result - rhs
        return result

    def term(self) -> MPoly:
        result = self.factor()
        while self.peek()[1] == '*' and self.peek()[0] == 'op':
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> MPoly:
        base = self.atom()
        if self.peek()[1] == '^' and self.peek()[0] == 'op':
            self.take()
            kind, value, offset = self.take()
            if kind != 'number' or '/' in value:
                raise PolynomialSyntaxError("Exponent must be a non-negative integer", offset)
            return base ** int(value)
        return base

    def atom(self) -> MPoly:
        kind, value, offset = self.take()
        if kind == 'number':
            if '/' in value:
                n, d = value.split('/')
                if int(d) == 0:
                    raise PolynomialSyntaxError("Zero denominator", offset)
                return self.ring.constant(self.ring.domain(int(n)) / self.ring.domain(int(d)))
            return self.ring.constant(int(value))
        if kind == 'ident':
            if value not in self.ring.index:
                raise UnknownVariableError(value, offset)
            return self.ring.gen(value)
        if value == '(':
            inner = self.expr()
            self.expect(')')
            return inner
        if value == '-':
            return -self.factor()
        raise PolynomialSyntaxError(f"Unexpected {value or 'end of input'!r}", offset)


def parse_poly(text: str, ring: Ring) -> MPoly:
    """Parse polynomial text in the ring's variable table.

    Args:
        text: e.g. "2*a02*b02 - b02*b11 - b11*b20 + b21" or "3/2*x^2 - (x+y)^3"
        ring: ring whose symbols are the admissible identifiers

    Returns:
        The canonical polynomial.
    """
    return _Parser(text, ring).parse()


def parse_many(texts, ring: Ring) -> List[MPoly]:
    return [parse_poly(t, ring) for t in texts]


def _format_coefficient(c, ring: Ring) -> Tuple[bool, str]:
    """(is_negative, magnitude text) for a domain element."""
    if ring.characteristic:
        return False, str(int(c) % ring.characteristic)
    n, d = int(ring.domain.numer(c)), int(ring.domain.denom(c))
    negative = n < 0
    n = abs(n)
    return negative, str(n) if d == 1 else f"{n}/{d}"


def render_monomial(m, ring: Ring) -> str:
    parts = []
    for name, e in zip(ring.symbols, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return '*'.join(parts)


def render(f: MPoly, ring: Optional[Ring] = None) -> str:
    """Canonical text: terms in descending term order, reduced fractions, unit coefficients omitted."""
    ring = ring or f.ring
    if f.is_zero():
        return '0'
    out = []
    for i, (m, c) in enumerate(f.sorted_terms()):
        negative, mag = _format_coefficient(c, ring)
        mono = render_monomial(m, ring)
        if mono:
            body = mono if mag == '1' else f"{mag}*{mono}"
        else:
            body = mag
        if i == 0:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return ''.join(out)
