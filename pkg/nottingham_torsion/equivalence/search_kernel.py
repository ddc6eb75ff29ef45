"""
Exhaustive scans over group elements t(1 + a_1 t + ... + a_m t^m), a_i in F_p.

On a character of type <l, m> the action of u only reads a_1 .. a_(m-1): the
coefficient of u.chi at index j is fixed by a_1 .. a_(m-j). `prefix_search`
walks the candidates depth-first in lexicographic order and prunes a prefix
a_1 .. a_k as soon as index m - k disagrees with the target. `ActionTable`
instead tabulates the action of every candidate once, for sweeps over many
characters.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from nottingham_torsion.characters import Character, break_sequence, char_eval
from nottingham_torsion.series import NottinghamElt, Prime, basis_subst, unit_decompose
from nottingham_torsion.utils.errors import BudgetExceededError, UsageError
from nottingham_torsion.utils.util import coprime_indices

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchOutcome:
    """
    Attributes:
        element (Optional[NottinghamElt]): The first accepted candidate, or None.
        visited (int): Search-tree nodes evaluated, pruned ones included.
        search_space (int): p^m, the number of candidates covered.
    """
    element: Optional[NottinghamElt]
    visited: int
    search_space: int


def require_budget(cost: int, budget: int, what: str = "search") -> None:
    """
    Raises:
        BudgetExceededError: If cost exceeds budget.
    """
    if cost > budget:
        logger.warning("refusing %s: %d candidates exceed budget %d", what, cost, budget)
        raise BudgetExceededError(cost, budget, what)


def prefix_search(chi: Character, psi: Character, m: int, budget: int,
                  accept: Callable[[Character, NottinghamElt], bool]) -> SearchOutcome:
    """
    Find the lexicographically smallest (a_1, ..., a_m) with u.chi = psi and accept(chi, u).

    Both characters must already carry bound m.

    Raises:
        BudgetExceededError: If p^m exceeds budget.
    """
    prime = chi.prime
    p = prime.p
    space = p ** m
    require_budget(space, budget)
    placeholder = NottinghamElt.identity(prime, 1)
    visited = 0

    def matches(prefix: list[int]) -> bool:
        j = m - len(prefix)
        if j < 1 or j % p == 0:
            return True
        v = NottinghamElt.from_coefficients(prime, prefix) if prefix else placeholder
        return char_eval(chi, basis_subst(j, v, precision=m)) == psi.coefficient(j)

    def walk(prefix: list[int]) -> Optional[NottinghamElt]:
        nonlocal visited
        visited += 1
        if not matches(prefix):
            return None
        if len(prefix) == m:
            u = NottinghamElt.from_coefficients(prime, prefix)
            return u if accept(chi, u) else None
        for a in range(p):
            prefix.append(a)
            found = walk(prefix)
            prefix.pop()
            if found is not None:
                return found
        return None

    element = walk([])
    logger.debug("prefix search over %d candidates visited %d nodes, found=%s", space, visited, element is not None)
    return SearchOutcome(element, visited, space)


def pair_search(chi: Character, psi: Character, budget: int,
                accept: Callable[[Character, NottinghamElt], bool]) -> Optional[SearchOutcome]:
    """
    Run `prefix_search` on a pair after aligning both characters to bound m.

    Returns:
        Optional[SearchOutcome]: None without searching when the types differ.

    Raises:
        UsageError: If the primes differ.
        DomainError: If either character is not surjective.
        BudgetExceededError: If p^m exceeds budget.
    """
    if chi.prime != psi.prime:
        raise UsageError(f"mismatched primes {chi.prime.p} and {psi.prime.p}")
    kind = break_sequence(chi)
    if break_sequence(psi) != kind:
        return None
    return prefix_search(chi.rebound(kind.m), psi.rebound(kind.m), kind.m, budget, accept)


class ActionTable:
    """
    The action of every u = t(1 + a_1 t + ... + a_(m-1) t^(m-1)) on characters of bound m.

    Row r of `matrices` maps a coefficient vector c (over the p-coprime indices
    up to m) to the coefficients of u_r.chi; row r of `kernels` maps c to chi(u_r/t).
    Rows follow the lexicographic order of (a_1, ..., a_(m-1)).
    """

    def __init__(self, prime: Prime, m: int, budget: int):
        """
        Raises:
            BudgetExceededError: If p^(m-1) exceeds budget.
        """
        p = prime.p
        self.prime = prime
        self.m = m
        self.indices = coprime_indices(p, 1, m)
        size = p ** (m - 1)
        require_budget(size, budget, "action table")
        width = len(self.indices)
        self.matrices = np.zeros((size, width, width), dtype=np.int64)
        self.kernels = np.zeros((size, width), dtype=np.int64)
        for r, digits in enumerate(itertools.product(range(p), repeat=m - 1)):
            u = NottinghamElt.from_coefficients(prime, digits + (0,))
            for row, j in enumerate(self.indices):
                self.matrices[r, row] = [e for _, e in unit_decompose(basis_subst(j, u), m).exps]
            self.kernels[r] = [e for _, e in unit_decompose(u.unit, m).exps]
        logger.debug("tabulated the action of %d elements at bound %d", size, m)

    def __len__(self) -> int:
        return len(self.kernels)

    def element(self, r: int) -> NottinghamElt:
        p = self.prime.p
        digits = []
        for _ in range(self.m - 1):
            r, a = divmod(r, p)
            digits.append(a)
        return NottinghamElt.from_coefficients(self.prime, tuple(reversed(digits)) + (0,))

    def vector(self, chi: Character) -> np.ndarray:
        return np.array([chi.coefficient(j) for j in self.indices], dtype=np.int64)

    def character(self, values: np.ndarray) -> Character:
        return Character.from_mapping(self.prime, dict(zip(self.indices, values.tolist())), bound=self.m)

    def orbit(self, chi: Character, kernel_only: bool = False) -> tuple[set[Character], int]:
        """
        The set {u.chi}, over every u, or over u with chi(u/t) = 0 mod p when kernel_only.

        Returns:
            tuple[set[Character], int]: The image and the number of elements swept.
        """
        psq, p = self.prime.psq, self.prime.p
        c = self.vector(chi)
        acted = (self.matrices @ c) % psq
        if kernel_only:
            acted = acted[((self.kernels @ c) % psq) % p == 0]
        image = {self.character(row) for row in np.unique(acted, axis=0)}
        return image, len(self)
