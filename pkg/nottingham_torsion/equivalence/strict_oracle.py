import asyncio
import logging
from typing import Optional

from nottingham_torsion.characters import Character, char_eval
from nottingham_torsion.interfaces.equivalence_oracle_interface import EquivalenceOracle
from nottingham_torsion.reduction import Witness
from nottingham_torsion.series import NottinghamElt
from nottingham_torsion.utils.config import DEFAULT_BUDGET
from .search_kernel import SearchOutcome, pair_search

logger = logging.getLogger(__name__)


class StrictEquivalenceOracle(EquivalenceOracle):
    """
    Strict equivalence: psi = u.chi with chi(u/t) = 0 mod p.

    Scans every u with coefficients (a_1, ..., a_m) in F_p^m, which is complete for
    characters of type <l, m>, and returns the lexicographically smallest witness.
    """

    def __init__(self, budget: int = DEFAULT_BUDGET):
        super().__init__(budget)

    def _accepts_leaf(self, chi: Character, u: NottinghamElt) -> bool:
        return char_eval(chi, u.unit.truncate(chi.bound)) % chi.prime.p == 0

    def explore(self, chi: Character, psi: Character) -> Optional[SearchOutcome]:
        """
        The raw search result, including the number of nodes visited.

        Returns:
            Optional[SearchOutcome]: None when the types differ.
        """
        return pair_search(chi, psi, self.budget, self._accepts_leaf)

    def search(self, chi: Character, psi: Character) -> Optional[Witness]:
        """
        Synchronously search for a strict equivalence witness.

        Args:
            chi (Character): The source character.
            psi (Character): The target character.

        Returns:
            Optional[Witness]: The lexicographically smallest witness, or None.

        Raises:
            BudgetExceededError: If p^m exceeds the budget.
            UsageError: If the primes differ.
            DomainError: If a character is not surjective.
        """
        outcome = self.explore(chi, psi)
        if outcome is None or outcome.element is None:
            return None
        return Witness.certify(chi.rebound(outcome.element.precision), outcome.element)

    async def asearch(self, chi: Character, psi: Character) -> Optional[Witness]:
        """
        Asynchronously search for a strict equivalence witness.

        The scan runs in the default executor so the event loop stays free.

        Args:
            chi (Character): The source character.
            psi (Character): The target character.

        Returns:
            Optional[Witness]: The lexicographically smallest witness, or None.

        Raises:
            BudgetExceededError: If p^m exceeds the budget.
            UsageError: If the primes differ.
        """
        loop = asyncio.get_running_loop()
        return await loop.run_in_executor(None, self.search, chi, psi)


def strict_equiv_search(chi: Character, psi: Character, budget: int = DEFAULT_BUDGET) -> Optional[Witness]:
    return StrictEquivalenceOracle(budget).search(chi, psi)
