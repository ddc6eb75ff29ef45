import random

import pytest

from nottingham_torsion.characters import Character
from nottingham_torsion.utils.config import DEFAULT_SEED


def char(p: int, mapping: dict[int, int], bound: int = 1) -> Character:
    return Character.from_mapping(p, mapping, bound=bound)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(DEFAULT_SEED)


@pytest.fixture
def counterexample_pair() -> tuple[Character, Character]:
    """The p = 2, type <5,15> pair of distinct reduced forms that are strictly equivalent."""
    return char(2, {5: 1, 15: 2}, 15), char(2, {5: 1, 11: 2, 15: 2}, 15)
