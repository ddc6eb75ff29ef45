from abc import ABC, abstractmethod
from typing import Optional

from nottingham_torsion.characters import Character
from nottingham_torsion.series import NottinghamElt


class EquivalenceOracle(ABC):
    """
    Abstract base class for exhaustive equivalence oracles on characters.

    An oracle decides whether psi = u.chi for some u in the Nottingham group, with
    optional extra conditions on u. Implementations differ only in the condition
    checked once a full candidate u is known, so the strict and weak relations
    share one search and one budget contract.

    Attributes:
        budget (int): Maximum number of candidates a single search may cover.
    """

    def __init__(self, budget: int):
        """
        Initialize the oracle with its search budget.

        Args:
            budget (int): Maximum number of candidates a single search may cover.
        """
        self.budget = budget

    @abstractmethod
    def _accepts_leaf(self, chi: Character, u: NottinghamElt) -> bool:
        """
        Decide whether a complete candidate u with u.chi = psi is a witness.

        Args:
            chi (Character): The source character.
            u (NottinghamElt): A candidate already known to carry chi to psi.

        Returns:
            bool: True if u certifies the relation.
        """
        pass

    @abstractmethod
    def search(self, chi: Character, psi: Character) -> Optional[object]:
        """
        Synchronously search for the lexicographically smallest witness.

        Args:
            chi (Character): The source character.
            psi (Character): The target character.

        Returns:
            Optional[object]: The oracle's witness, or None if chi and psi are unrelated.

        Raises:
            BudgetExceededError: If p^m exceeds the budget.
            UsageError: If the primes differ.
        """
        pass

    @abstractmethod
    async def asearch(self, chi: Character, psi: Character) -> Optional[object]:
        """
        Asynchronously search for the lexicographically smallest witness.

        Args:
            chi (Character): The source character.
            psi (Character): The target character.

        Returns:
            Optional[object]: The oracle's witness, or None if chi and psi are unrelated.

        Raises:
            BudgetExceededError: If p^m exceeds the budget.
            UsageError: If the primes differ.
        """
        pass
