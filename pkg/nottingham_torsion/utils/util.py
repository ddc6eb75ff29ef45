from enum import Enum
from typing import Type


def validate_str_value(model: Type[Enum], value: Enum | str) -> Enum:
    """
    Validate and convert a string to a member of the given Enum.

    Names are matched case-insensitively and dashes are accepted in place of
    underscores, so "canonical-reduce" resolves to CountMethod.CANONICAL_REDUCE.
    Enum values are accepted as well as names.

    Args:
        model (Type[Enum]): The Enum class to convert into.
        value (Union[Enum, str]): A member of `model`, or its name or value as a string.

    Returns:
        Enum: The matching member of `model`.

    Raises:
        ValueError: If the string names no member, or the value has the wrong type.
    """
    valid_values = ', '.join([v.name.replace("_", "-").lower() for v in model])
    if isinstance(value, str):
        try:
            # Attempt to convert string to enum
            value = model[value.strip().upper().replace("-", "_")]
        except KeyError:
            by_value = {str(v.value): v for v in model}
            if value in by_value:
                return by_value[value]
            raise ValueError(
                f"Invalid {model.__name__} name: '{value}'. Expected one of {valid_values}")
    elif not isinstance(value, model):
        raise ValueError(
            f"Invalid value type: '{value}'. Expected type: {model.__name__} or str with value in {valid_values}")
    return value


def mod_inverse(a: int, modulus: int) -> int:
    """Inverse of `a` modulo `modulus`; `a` must be coprime to it."""
    return pow(a % modulus, -1, modulus)


def split_p_power(k: int, p: int) -> tuple[int, int]:
    """
    Write k = p^s * k' with p not dividing k'.

    Returns:
        tuple[int, int]: The pair (s, k').
    """
    s = 0
    while k % p == 0:
        k //= p
        s += 1
    return s, k


def coprime_indices(p: int, lo: int, hi: int) -> list[int]:
    """Indices j with lo <= j <= hi and p not dividing j, ascending."""
    return [j for j in range(max(lo, 1), hi + 1) if j % p]
