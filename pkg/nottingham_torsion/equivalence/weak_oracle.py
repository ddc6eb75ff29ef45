import asyncio
from typing import Optional

from nottingham_torsion.characters import Character
from nottingham_torsion.interfaces.equivalence_oracle_interface import EquivalenceOracle
from nottingham_torsion.series import NottinghamElt
from nottingham_torsion.utils.config import DEFAULT_BUDGET
from .search_kernel import SearchOutcome, pair_search


class WeakEquivalenceOracle(EquivalenceOracle):
    """Weak equivalence: psi = u.chi for some u, with no condition on chi(u/t)."""

    def __init__(self, budget: int = DEFAULT_BUDGET):
        super().__init__(budget)

    def _accepts_leaf(self, chi: Character, u: NottinghamElt) -> bool:
        return True

    def explore(self, chi: Character, psi: Character) -> Optional[SearchOutcome]:
        return pair_search(chi, psi, self.budget, self._accepts_leaf)

    def search(self, chi: Character, psi: Character) -> Optional[NottinghamElt]:
        """
        Synchronously search for an element carrying chi to psi.

        Args:
            chi (Character): The source character.
            psi (Character): The target character.

        Returns:
            Optional[NottinghamElt]: The lexicographically smallest such element, or None.

        Raises:
            BudgetExceededError: If p^m exceeds the budget.
            UsageError: If the primes differ.
        """
        outcome = self.explore(chi, psi)
        return None if outcome is None else outcome.element

    async def asearch(self, chi: Character, psi: Character) -> Optional[NottinghamElt]:
        """
        Asynchronously search for an element carrying chi to psi.

        Args:
            chi (Character): The source character.
            psi (Character): The target character.

        Returns:
            Optional[NottinghamElt]: The lexicographically smallest such element, or None.

        Raises:
            BudgetExceededError: If p^m exceeds the budget.
            UsageError: If the primes differ.
        """
        loop = asyncio.get_running_loop()
        return await loop.run_in_executor(None, self.search, chi, psi)


def weak_equiv_search(chi: Character, psi: Character, budget: int = DEFAULT_BUDGET) -> Optional[NottinghamElt]:
    return WeakEquivalenceOracle(budget).search(chi, psi)
