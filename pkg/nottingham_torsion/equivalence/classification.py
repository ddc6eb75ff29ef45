"""
Counting strict and weak classes of characters of one type <l, m>.

Every strict class contains a reduced form, so `partition_reduced_forms` only
has to join the B(p, l, m) reduced forms with the strict oracle. For l < p the
reduced form of a class is unique and `classify_by_reduction` counts classes by
reducing every character instead. The orbit sweeps at the bottom of the module
partition every character of a type, and are used to check the known class
counts for small types.
"""
from __future__ import annotations

import asyncio
import itertools
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from math import gcd
from typing import Optional

from nottingham_torsion.characters import (Character, ReducedForm, break_sequence, enumerate_characters,
                                           enumerate_reduced_forms, random_character, require_type, scalar_mul)
from nottingham_torsion.reduction import Witness, reduce
from nottingham_torsion.series import NottinghamElt, as_prime
from nottingham_torsion.utils.config import DEFAULT_BUDGET
from nottingham_torsion.utils.errors import DomainError, InconsistencyError
from nottingham_torsion.utils.util import coprime_indices, validate_str_value
from .equivalence_schema import (ClassReport, CountMethod, EquivalenceClass, LegacyCount, PairWitness,
                                 PowerConjugacyCase)
from .search_kernel import ActionTable, require_budget
from .strict_oracle import StrictEquivalenceOracle, strict_equiv_search
from .union_find import UnionFind

logger = logging.getLogger(__name__)


def bound_parameters(p: int, l: int, m: int) -> tuple[int, int]:
    """
    The exponents (k, epsilon) of B(p, l, m) = p^k (p - 1)^epsilon.

    k counts the integers in [m - l, m - 1] not divisible by p; epsilon is 1 when p
    divides m and 2 otherwise.

    Raises:
        DomainError: If <l, m> is not a valid type for p.
    """
    p = require_type(p, l, m).p
    k = len(coprime_indices(p, m - l, m - 1))
    return k, 1 if m % p == 0 else 2


def bound_B(p: int, l: int, m: int) -> int:
    """
    Raises:
        DomainError: If <l, m> is not a valid type for p.
    """
    k, epsilon = bound_parameters(p, l, m)
    return p ** k * (p - 1) ** epsilon


def legacy_counts(p: int, m: int, which: LegacyCount | str) -> int:
    """
    Earlier closed-form class counts over F_p.

    Args:
        p (int): The prime.
        m (int): The break of interest.
        which (Union[LegacyCount, str]): d_m (order p, type <m>), d_1m (order p^2,
            type <1, m>) or d_2m_weak (weak classes of type <2, m>).

    Returns:
        int: The count.

    Raises:
        ValueError: If `which` names no formula.
    """
    which = validate_str_value(LegacyCount, which)
    p = as_prime(p).p
    if which is LegacyCount.D_M:
        return p - 1
    if m % p == 0:
        return p * (p - 1)
    if m % p == 1:
        return (p - 1) ** 2
    return p * (p - 1) ** 2


def _representative(characters: list[Character]) -> Character:
    return min(characters, key=Character.sort_key)


def _build_report(p: int, l: int, m: int, forms: list[ReducedForm], union: UnionFind,
                  merges: dict[int, list[PairWitness]], method: CountMethod, space: int, visited: int,
                  started: float) -> ClassReport:
    classes = []
    for group in union.groups():
        members = [forms[i] for i in group]
        root = union.find(group[0])
        classes.append(EquivalenceClass(_representative([f.to_character() for f in members]), tuple(members),
                                        tuple(merges.get(root, []))))
    classes.sort(key=lambda c: c.representative.sort_key())
    bound = bound_B(p, l, m)
    if len(classes) > bound:
        raise InconsistencyError(f"found {len(classes)} classes of type <{l},{m}>, above the bound {bound}")
    return ClassReport(p, l, m, len(classes), tuple(classes), method, space, bound, visited,
                       runtime_ms=(time.perf_counter() - started) * 1000)


def _record_merge(union: UnionFind, merges: dict[int, list[PairWitness]], i: int, j: int,
                  pair: PairWitness) -> None:
    witnesses = merges.pop(union.find(i), []) + merges.pop(union.find(j), []) + [pair]
    union.union(i, j)
    merges[union.find(i)] = witnesses
    logger.debug("merged reduced forms %d and %d", i, j)


def _partition_cost(p: int, count: int, m: int) -> int:
    return count * (count - 1) // 2 * p ** m


def partition_reduced_forms(p: int, l: int, m: int, budget: int = DEFAULT_BUDGET) -> ClassReport:
    """
    Partition the reduced forms of type <l, m> into strict classes with the oracle.

    Pairs (i, j), i < j, are visited in enumeration order and skipped once i and j
    already share a class.

    Returns:
        ClassReport: One class per strict class of characters of this type.

    Raises:
        DomainError: If <l, m> is not a valid type for p.
        BudgetExceededError: If (number of pairs) * p^m exceeds budget.
    """
    started = time.perf_counter()
    p = require_type(p, l, m).p
    forms = enumerate_reduced_forms(p, l, m)
    require_budget(_partition_cost(p, len(forms), m), budget, "partition")
    characters = [f.to_character() for f in forms]
    oracle = StrictEquivalenceOracle(budget)
    union = UnionFind(range(len(forms)))
    merges: dict[int, list[PairWitness]] = {}
    visited = 0
    for i, j in itertools.combinations(range(len(forms)), 2):
        if union.same(i, j):
            continue
        outcome = oracle.explore(characters[i], characters[j])
        visited += outcome.visited
        if outcome.element is not None:
            witness = Witness.certify(characters[i], outcome.element)
            _record_merge(union, merges, i, j, PairWitness(characters[i], characters[j], witness))
    return _build_report(p, l, m, forms, union, merges, CountMethod.ORACLE_PARTITION, p ** m, visited, started)


def _search_pair(chi: Character, psi: Character, budget: int) -> tuple[Optional[NottinghamElt], int]:
    outcome = StrictEquivalenceOracle(budget).explore(chi, psi)
    return outcome.element, outcome.visited


async def apartition_reduced_forms(p: int, l: int, m: int, budget: int = DEFAULT_BUDGET,
                                   jobs: int = 1) -> ClassReport:
    """
    `partition_reduced_forms` with the pairwise searches spread over worker processes.

    Every pair is searched; results are merged in pair order exactly as the
    sequential version merges them, so the report does not depend on `jobs`.

    Args:
        p (int): The prime.
        l (int): First break.
        m (int): Second break.
        budget (int): Candidate budget.
        jobs (int): Worker processes.

    Returns:
        ClassReport: The same report as `partition_reduced_forms`.

    Raises:
        DomainError: If <l, m> is not a valid type for p.
        BudgetExceededError: If (number of pairs) * p^m exceeds budget.
    """
    started = time.perf_counter()
    p = require_type(p, l, m).p
    forms = enumerate_reduced_forms(p, l, m)
    require_budget(_partition_cost(p, len(forms), m), budget, "partition")
    characters = [f.to_character() for f in forms]
    pairs = list(itertools.combinations(range(len(forms)), 2))
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        results = await asyncio.gather(*[
            loop.run_in_executor(executor, _search_pair, characters[i], characters[j], budget) for i, j in pairs])
    union = UnionFind(range(len(forms)))
    merges: dict[int, list[PairWitness]] = {}
    visited = 0
    for (i, j), (element, pair_visited) in zip(pairs, results):
        if union.same(i, j):
            continue
        visited += pair_visited
        if element is not None:
            witness = Witness.certify(characters[i], element)
            _record_merge(union, merges, i, j, PairWitness(characters[i], characters[j], witness))
    return _build_report(p, l, m, forms, union, merges, CountMethod.ORACLE_PARTITION, p ** m, visited, started)


def classify_by_reduction(p: int, l: int, m: int) -> ClassReport:
    """
    Classes of type <l, m> as the distinct reduced forms of all characters; needs l < p.

    Raises:
        DomainError: If the type is invalid or l >= p.
    """
    started = time.perf_counter()
    prime = require_type(p, l, m)
    if l >= prime.p:
        raise DomainError(f"canonical reduction classifies only l < p; got l={l}, p={prime.p}")
    characters = enumerate_characters(p, l, m)
    forms = sorted({reduce(chi)[0] for chi in characters}, key=lambda f: f.to_character().sort_key())
    union = UnionFind(range(len(forms)))
    return _build_report(prime.p, l, m, forms, union, {}, CountMethod.CANONICAL_REDUCE, len(characters), 0,
                         started)


def count_classes(p: int, l: int, m: int, method: CountMethod | str = CountMethod.ORACLE_PARTITION,
                  budget: int = DEFAULT_BUDGET) -> int:
    """
    Number of strict classes of characters of type <l, m>.

    Raises:
        ValueError: If `method` names no CountMethod.
        DomainError: If the type is invalid, or canonical-reduce is asked for with l >= p.
        BudgetExceededError: If the oracle partition exceeds budget.
    """
    method = validate_str_value(CountMethod, method)
    if method is CountMethod.CANONICAL_REDUCE:
        return classify_by_reduction(p, l, m).class_count
    return partition_reduced_forms(p, l, m, budget).class_count


def _count_orbits(characters: list[Character], table: ActionTable, kernel_only: bool) -> int:
    universe = set(characters)
    remaining = set(universe)
    classes = 0
    for chi in characters:
        if chi not in remaining:
            continue
        orbit, _ = table.orbit(chi, kernel_only)
        if not orbit <= universe:
            raise InconsistencyError("an orbit left the enumerated characters")
        remaining -= orbit
        classes += 1
    return classes


def count_weak_classes(p: int, l: int, m: int, budget: int = DEFAULT_BUDGET) -> int:
    """
    Number of weak classes among all characters of type <l, m>, by orbit sweeps.

    Raises:
        DomainError: If <l, m> is not a valid type for p.
        BudgetExceededError: If p^(m-1) exceeds budget.
    """
    prime = require_type(p, l, m)
    table = ActionTable(prime, m, budget)
    return _count_orbits(enumerate_characters(p, l, m), table, kernel_only=False)


def count_strict_classes_exhaustive(p: int, l: int, m: int, budget: int = DEFAULT_BUDGET) -> int:
    """
    Number of strict classes among all characters of type <l, m>, by orbit sweeps
    restricted to elements u with chi(u/t) = 0 mod p.

    Raises:
        DomainError: If <l, m> is not a valid type for p.
        BudgetExceededError: If p^(m-1) exceeds budget.
    """
    prime = require_type(p, l, m)
    table = ActionTable(prime, m, budget)
    return _count_orbits(enumerate_characters(p, l, m), table, kernel_only=True)


def count_order_p_classes(p: int, m: int, budget: int = DEFAULT_BUDGET) -> int:
    """
    Number of classes of order-p characters of type <m>.

    An order-p character is embedded as p times its F_p values, which commutes
    with the action; for order p every u qualifies, so classes are plain orbits.

    Raises:
        DomainError: If p divides m.
        BudgetExceededError: If p^(m-1) or the number of characters exceeds budget.
    """
    prime = as_prime(p)
    p = prime.p
    if m < 1 or m % p == 0:
        raise DomainError(f"<{m}> is not a valid order-p type for p={p}")
    indices = coprime_indices(p, 1, m)
    require_budget(p ** (len(indices) - 1) * (p - 1), budget, "order-p enumeration")
    table = ActionTable(prime, m, budget)
    choices = [range(1, p) if j == m else range(p) for j in indices]
    characters = [Character.from_mapping(prime, {j: p * x for j, x in zip(indices, digits)}, bound=m)
                  for digits in itertools.product(*choices)]
    return _count_orbits(characters, table, kernel_only=False)


def power_conjugacy_predicate(p: int, l: int, m: int, n: int) -> bool:
    """
    Whether u and u^n are conjugate, for u of order p^2 and type <l, m> with u != u^n.

    Raises:
        DomainError: If <l, m> is not a valid type for p.
    """
    p = require_type(p, l, m).p
    return n % p == 1 and not (p == 2 and m == 2 * l)


def power_conjugacy_oracle(chi: Character, n: int,
                           budget: int = DEFAULT_BUDGET) -> tuple[bool, Optional[Witness]]:
    """
    Decide conjugacy of u and u^n as strict equivalence of chi and n * chi.

    Raises:
        DomainError: If chi is not surjective, n is divisible by p, or n * chi = chi.
        BudgetExceededError: If p^m exceeds budget.
    """
    p = chi.prime.p
    break_sequence(chi)
    if gcd(n, p) != 1:
        raise DomainError(f"n={n} must be prime to p={p}")
    target = scalar_mul(n, chi)
    if target == chi:
        raise DomainError(f"{n} * chi equals chi")
    witness = strict_equiv_search(chi, target, budget)
    return witness is not None, witness


def power_conjugacy_sweep(p: int, l: int, m: int, samples: int = 50, seed: int = 0,
                          budget: int = DEFAULT_BUDGET) -> list[PowerConjugacyCase]:
    """
    Check the oracle against the predicate on random characters of type <l, m>.

    Each sampled character is paired with every n in [2, p^2) prime to p with
    n * chi != chi.

    Returns:
        list[PowerConjugacyCase]: Every case checked; `agrees` is False on a disagreement.

    Raises:
        DomainError: If <l, m> is not a valid type for p.
        BudgetExceededError: If p^m exceeds budget.
    """
    prime = require_type(p, l, m)
    require_budget(prime.p ** m, budget)
    rng = random.Random(seed)
    cases = []
    for _ in range(samples):
        chi = random_character(prime.p, l, m, rng)
        for n in range(2, prime.psq):
            if gcd(n, prime.p) != 1 or scalar_mul(n, chi) == chi:
                continue
            observed, witness = power_conjugacy_oracle(chi, n, budget)
            case = PowerConjugacyCase(chi, n, power_conjugacy_predicate(prime.p, l, m, n), observed, witness)
            if not case.agrees:
                logger.warning("power conjugacy disagreement: chi=%s, n=%d", chi.as_dict(), n)
            cases.append(case)
    return cases
