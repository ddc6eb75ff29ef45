from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from nottingham_torsion.characters import Character, char_eval
from nottingham_torsion.series import NottinghamElt
from nottingham_torsion.utils.errors import DomainError


@dataclass(frozen=True)
class Witness:
    """
    A group element u certifying chi ~= u.chi, with the cached value chi(u/t).

    Attributes:
        u (NottinghamElt): The certifying element.
        kernel_value (int): chi(u(t)/t) mod p^2; always divisible by p.
    """
    u: NottinghamElt
    kernel_value: int

    def __post_init__(self):
        if self.kernel_value % self.u.prime.p:
            raise DomainError(f"chi(u/t) = {self.kernel_value} is not divisible by p")

    @classmethod
    def certify(cls, chi: Character, u: NottinghamElt) -> Witness:
        """
        Raises:
            DomainError: If chi(u/t) is not divisible by p.
        """
        return cls(u, char_eval(chi, u.unit.truncate(chi.bound)))


class WitnessVerdict(Enum):
    VALID = "valid"
    ACTION_MISMATCH = "action-mismatch"
    KERNEL_VIOLATION = "kernel-violation"
    INCOMPATIBLE = "incompatible"


@dataclass(frozen=True)
class WitnessCheck:
    """Outcome of a witness verification; truthy exactly when the witness is valid."""
    verdict: WitnessVerdict
    detail: str = ""

    def __bool__(self) -> bool:
        return self.verdict is WitnessVerdict.VALID
