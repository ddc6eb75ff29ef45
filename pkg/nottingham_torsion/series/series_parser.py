"""
Text literals for units and group elements.

    unit     "1+t^3+t^4", "(1+t)^-1*(1+2*t^2)"
    element  "t*(1+t^3+t^4)*(1+t^15)^2"

Grammar (integer coefficients are reduced mod p):

    sum     := product (('+' | '-') product)*
    product := power ('*' power)*
    power   := primary ('^' ['-'] INT)?
    primary := INT | 't' | '(' sum ')'
"""
from __future__ import annotations

import re

import numpy as np

from nottingham_torsion.utils.errors import LiteralParseError
from nottingham_torsion.utils.util import mod_inverse
from .series import NottinghamElt, Prime, UnitSeries, as_prime, unit_pow

_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|([-+*^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if not match:
            raise LiteralParseError(f"unexpected character {stripped[pos]!r}", _byte_offset(text, pos))
        number, variable, symbol = match.groups()
        start = match.start(1) if number else match.start(2) if variable else match.start(3)
        if number:
            tokens.append(("int", number, start))
        elif variable:
            tokens.append(("t", variable, start))
        else:
            tokens.append((symbol, symbol, start))
        pos = match.end()
    tokens.append(("end", "", len(stripped)))
    return tokens


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _SeriesParser:
    """Recursive-descent evaluator over truncated series with `degree + 1` coefficients."""

    def __init__(self, text: str, prime: Prime, degree: int):
        self.text = text
        self.p = prime.p
        self.degree = degree
        self.tokens = _tokenize(text)
        self.index = 0

    def _peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def _advance(self) -> tuple[str, str, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _fail(self, message: str, token: tuple[str, str, int]):
        raise LiteralParseError(message, _byte_offset(self.text, token[2]))

    def _constant(self, c: int) -> np.ndarray:
        series = np.zeros(self.degree + 1, dtype=np.int64)
        series[0] = c % self.p
        return series

    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.convolve(a, b)[: self.degree + 1] % self.p

    def _pow(self, a: np.ndarray, e: int, token) -> np.ndarray:
        # a = c t^v U with U a principal unit, so a^e = c^e t^(ve) U^e
        support = np.flatnonzero(a)
        if e < 0 and (not support.size or support[0]):
            self._fail("negative power of a series without constant term", token)
        if not support.size:
            return self._constant(1) if e == 0 else a
        v = int(support[0])
        shift = v * e
        result = np.zeros(self.degree + 1, dtype=np.int64)
        if shift > self.degree:
            return result
        scale = pow(int(a[v]), e, self.p)
        if shift == self.degree:
            result[shift] = scale
            return result
        unit = UnitSeries.from_full(self.p, self.degree - shift, a[v:] * mod_inverse(int(a[v]), self.p))
        result[shift:] = unit_pow(unit, e).full_coefficients() * scale % self.p
        return result

    def parse(self) -> np.ndarray:
        value = self._sum()
        token = self._peek()
        if token[0] != "end":
            self._fail(f"unexpected {token[1]!r}", token)
        return value

    def _sum(self) -> np.ndarray:
        value = self._product()
        while self._peek()[0] in "+-":
            sign = 1 if self._advance()[0] == "+" else -1
            value = (value + sign * self._product()) % self.p
        return value

    def _product(self) -> np.ndarray:
        value = self._power()
        while self._peek()[0] == "*":
            self._advance()
            value = self._mul(value, self._power())
        return value

    def _power(self) -> np.ndarray:
        start = self._peek()
        value = self._primary()
        if self._peek()[0] == "^":
            self._advance()
            sign = 1
            if self._peek()[0] == "-":
                self._advance()
                sign = -1
            token = self._advance()
            if token[0] != "int":
                self._fail("expected an integer exponent", token)
            value = self._pow(value, sign * int(token[1]), start)
        return value

    def _primary(self) -> np.ndarray:
        token = self._advance()
        if token[0] == "int":
            return self._constant(int(token[1]))
        if token[0] == "t":
            series = np.zeros(self.degree + 1, dtype=np.int64)
            if self.degree >= 1:
                series[1] = 1
            return series
        if token[0] == "(":
            value = self._sum()
            closing = self._advance()
            if closing[0] != ")":
                self._fail("expected ')'", closing)
            return value
        self._fail(f"unexpected {token[1] or 'end of input'!r}", token)


def parse_unit_literal(text: str, prime: Prime | int, precision: int) -> UnitSeries:
    """
    Parse a unit literal such as "1+t^3+t^4" at the given precision.

    Raises:
        LiteralParseError: If the text is malformed or its constant term is not 1.
    """
    prime = as_prime(prime)
    values = _SeriesParser(text, prime, precision).parse()
    if values[0] != 1:
        raise LiteralParseError("a unit literal must have constant term 1", 0)
    return UnitSeries.from_full(prime, precision, values)


def parse_nottingham_literal(text: str, prime: Prime | int, precision: int) -> NottinghamElt:
    """
    Parse a group element literal such as "t*(1+t^3+t^4)*(1+t^15)^2".

    The series must be t + (higher terms); the result has the given precision.

    Raises:
        LiteralParseError: If the text is malformed or is not of the form t(1 + ...).
    """
    prime = as_prime(prime)
    values = _SeriesParser(text, prime, precision + 1).parse()
    if values[0] != 0 or values[1] != 1:
        raise LiteralParseError("a group element literal must be t*(1 + ...)", 0)
    return NottinghamElt(UnitSeries.from_full(prime, precision, values[1:]))
