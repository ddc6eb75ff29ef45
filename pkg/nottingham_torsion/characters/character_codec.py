"""
Text and JSON forms of characters.

    text   "p=2; 5:1,15:2"   (or just "5:1,15:2" when p is given separately)
    json   {"p": 2, "coeffs": {"5": 1, "15": 2}}
"""
from __future__ import annotations

import json
import re
from typing import Any

from nottingham_torsion.series import Prime, as_prime
from nottingham_torsion.utils.errors import LiteralParseError
from .characters_schema import Character

_PAIR = re.compile(r"\s*(\d+)\s*:\s*(\d+)\s*")
_HEADER = re.compile(r"\s*p\s*=\s*(\d+)\s*;")


def parse_character_literal(text: str, prime: Prime | int) -> Character:
    """
    Parse comma-separated `index:value` pairs.

    Args:
        text (str): e.g. "5:1,15:2".
        prime (Union[Prime, int]): The characteristic p.

    Returns:
        Character: The parsed character.

    Raises:
        LiteralParseError: If the grammar is violated, an index is divisible by p
            or repeated, or a value is not in [0, p^2). The error carries the byte offset.
    """
    prime = as_prime(prime)
    return _parse_pairs(text, 0, prime)


def _parse_pairs(text: str, start: int, prime: Prime) -> Character:
    p, psq = prime.p, prime.psq
    values: dict[int, int] = {}
    if text[start:].strip() == "":
        return Character.from_mapping(prime, values)
    pos = start
    while True:
        match = _PAIR.match(text, pos)
        if not match:
            raise LiteralParseError("expected 'index:value'", _offset(text, pos))
        index, value = int(match.group(1)), int(match.group(2))
        if index < 1 or index % p == 0:
            raise LiteralParseError(f"index {index} must be positive and not divisible by {p}",
                                    _offset(text, match.start(1)))
        if value >= psq:
            raise LiteralParseError(f"value {value} is not below p^2 = {psq}", _offset(text, match.start(2)))
        if index in values:
            raise LiteralParseError(f"index {index} given twice", _offset(text, match.start(1)))
        values[index] = value
        pos = match.end()
        if pos == len(text):
            break
        if text[pos] != ",":
            raise LiteralParseError(f"expected ',' but found {text[pos]!r}", _offset(text, pos))
        pos += 1
    return Character.from_mapping(prime, values)


def _offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def parse_character(text: str) -> Character:
    """
    Parse the headed form "p=2; 5:1,15:2".

    Raises:
        LiteralParseError: If the header or the pairs are malformed.
    """
    header = _HEADER.match(text)
    if not header:
        raise LiteralParseError("expected a 'p=<prime>;' header", 0)
    try:
        prime = Prime(int(header.group(1)))
    except ValueError as e:
        raise LiteralParseError(str(e), _offset(text, header.start(1)))
    return _parse_pairs(text, header.end(), prime)


def format_character_pairs(chi: Character) -> str:
    return ",".join(f"{j}:{c}" for j, c in chi.coeffs)


def format_character(chi: Character) -> str:
    return f"p={chi.prime.p}; {format_character_pairs(chi)}"


def character_to_json(chi: Character) -> dict[str, Any]:
    return {"p": chi.prime.p, "coeffs": {str(j): c for j, c in chi.coeffs}}


def character_from_json(data: dict[str, Any] | str) -> Character:
    """
    Raises:
        LiteralParseError: If the document is not a {"p", "coeffs"} object.
    """
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise LiteralParseError(f"invalid JSON: {e.msg}", e.pos)
    try:
        prime = Prime(int(data["p"]))
        coeffs = {int(j): int(c) for j, c in data["coeffs"].items()}
    except (KeyError, TypeError, AttributeError, ValueError) as e:
        raise LiteralParseError(f"malformed character document: {e}", 0)
    return parse_character_literal(",".join(f"{j}:{c}" for j, c in sorted(coeffs.items())), prime)
