from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from nottingham_torsion.characters import Character, ReducedForm
from nottingham_torsion.reduction import Witness


class CountMethod(Enum):
    CANONICAL_REDUCE = "canonical-reduce"
    ORACLE_PARTITION = "oracle-partition"


class LegacyCount(Enum):
    D_M = "d_m"
    D_1M = "d_1m"
    D_2M_WEAK = "d_2m_weak"


@dataclass(frozen=True)
class PairWitness:
    """A certified strict equivalence source ~= target, target = witness.u . source."""
    source: Character
    target: Character
    witness: Witness


@dataclass(frozen=True)
class EquivalenceClass:
    """
    Attributes:
        representative (Character): The lexicographically smallest member.
        members (tuple[ReducedForm, ...]): Reduced forms in the class, in enumeration order.
        witnesses (tuple[PairWitness, ...]): One witness per merge that built the class.
    """
    representative: Character
    members: tuple[ReducedForm, ...]
    witnesses: tuple[PairWitness, ...] = ()


@dataclass(frozen=True)
class ClassReport:
    """
    Strict equivalence classes of one type <l, m>.

    Attributes:
        p, l, m (int): The prime and the type.
        class_count (int): Number of classes found.
        classes (tuple[EquivalenceClass, ...]): The classes, ordered by representative.
        method (CountMethod): How the classes were computed.
        search_space_size (int): Candidates covered: p^m per oracle search, or the
            number of characters reduced.
        visited (int): Search-tree nodes actually evaluated.
        bound (int): B(p, l, m).
    """
    p: int
    l: int
    m: int
    class_count: int
    classes: tuple[EquivalenceClass, ...]
    method: CountMethod
    search_space_size: int
    bound: int
    visited: int = 0
    runtime_ms: float = field(default=0.0, compare=False)


@dataclass(frozen=True)
class PowerConjugacyCase:
    """One character and exponent n checked by the oracle against the predicate."""
    chi: Character
    n: int
    predicted: bool
    observed: bool
    witness: Optional[Witness] = None

    @property
    def agrees(self) -> bool:
        return self.predicted == self.observed
