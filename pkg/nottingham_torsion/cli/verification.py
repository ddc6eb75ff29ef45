"""
The acceptance suite behind `verify`.

Each check returns a CheckResult; a budget refusal inside a check makes it
"skipped", never "passed".
"""
from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from nottingham_torsion.characters import (Character, break_sequence, char_act, char_eval, enumerate_reduced_forms,
                                           random_character, validate_type)
from nottingham_torsion.equivalence import (CountMethod, LegacyCount, bound_B, count_classes,
                                            count_order_p_classes, count_strict_classes_exhaustive,
                                            count_weak_classes, legacy_counts, partition_reduced_forms,
                                            power_conjugacy_sweep, strict_equiv_search)
from nottingham_torsion.reduction import reduce, verify_witness
from nottingham_torsion.series import (NottinghamElt, UnitSeries, as_prime, basis_power, nott_compose, nott_inverse,
                                       unit_decompose, unit_mul, unit_pow, unit_recompose, unit_subst)
from nottingham_torsion.utils.config import Settings
from nottingham_torsion.utils.errors import BudgetExceededError

logger = logging.getLogger(__name__)

SMALL_CLASS_GRID = ((2, 1, 2), (2, 1, 3), (2, 1, 5), (3, 1, 3), (3, 1, 4), (3, 1, 5), (3, 2, 7))
POWER_CONJUGACY_PRIMES = (2, 3)
POWER_CONJUGACY_MAX_COST = 2 ** 10
PROPERTY_PRIMES = (2, 3, 5)
PROPERTY_MAX_M = 15


class CheckStatus(Enum):
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: CheckStatus
    detail: str
    runtime_ms: float

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASSED


def _timed(name: str, check: Callable[[], tuple[bool, str]]) -> CheckResult:
    started = time.perf_counter()
    try:
        ok, detail = check()
        status = CheckStatus.PASSED if ok else CheckStatus.FAILED
    except BudgetExceededError as e:
        status, detail = CheckStatus.SKIPPED, str(e)
    runtime_ms = (time.perf_counter() - started) * 1000
    logger.info("%s: %s (%.0f ms)", name, status.value, runtime_ms)
    return CheckResult(name, status, detail, runtime_ms)


def valid_types(primes: tuple[int, ...], max_l: int, max_m: int) -> list[tuple[int, int, int]]:
    return [(p, l, m) for p in primes for l in range(1, max_l + 1) for m in range(1, max_m + 1)
            if validate_type(p, l, m)]


def check_reduced_form_counts() -> tuple[bool, str]:
    bad = [(p, l, m) for p, l, m in valid_types((2, 3, 5), 6, 18)
           if len(enumerate_reduced_forms(p, l, m)) != bound_B(p, l, m)]
    return not bad, f"mismatched types: {bad}" if bad else "every reduced-form count equals B(p,l,m)"


def check_small_l_equality(budget: int) -> tuple[bool, str]:
    rows = []
    for p, l, m in SMALL_CLASS_GRID:
        canonical = count_classes(p, l, m, CountMethod.CANONICAL_REDUCE, budget)
        oracle = count_classes(p, l, m, CountMethod.ORACLE_PARTITION, budget)
        rows.append((p, l, m, canonical, oracle, bound_B(p, l, m)))
    bad = [r for r in rows if not r[3] == r[4] == r[5]]
    return not bad, f"(p,l,m,canonical,oracle,B) disagreements: {bad}" if bad else f"{len(rows)} types agree"


def check_legacy_counts(budget: int) -> tuple[bool, str]:
    problems = []
    for p, l, m in SMALL_CLASS_GRID:
        if l == 1 and count_classes(p, l, m, CountMethod.CANONICAL_REDUCE, budget) != legacy_counts(p, m, LegacyCount.D_1M):
            problems.append(f"d_1,{m} at p={p}")
    for m in (6, 7, 8):
        weak = count_weak_classes(3, 2, m, budget)
        strict = count_strict_classes_exhaustive(3, 2, m, budget)
        # d = p * d_weak only off m = 2 mod p; there both equal p(p-1)^2
        ratio = 3 if m % 3 != 2 else 1
        if (weak != legacy_counts(3, m, LegacyCount.D_2M_WEAK) or strict != bound_B(3, 2, m)
                or strict != ratio * weak):
            problems.append(f"type <2,{m}> at p=3: weak={weak}, strict={strict}")
    for p, m in ((2, 3), (3, 4), (3, 5), (5, 3)):
        if count_order_p_classes(p, m, budget) != legacy_counts(p, m, LegacyCount.D_M):
            problems.append(f"d_{m} at p={p}")
    return not problems, "; ".join(problems) or "legacy counts reproduced"


def check_counterexample(budget: int) -> tuple[bool, str]:
    chi = Character.from_mapping(2, {5: 1, 15: 2}, bound=15)
    psi = Character.from_mapping(2, {5: 1, 11: 2, 15: 2}, bound=15)
    witness = strict_equiv_search(chi, psi, budget)
    found = witness is not None and bool(verify_witness(chi, psi, witness.u))
    # t(1+t^3+t^4)(1+t^15)^e with the e that makes chi(u/t) vanish
    head = UnitSeries.from_terms(2, 15, {3: 1, 4: 1})
    candidates = [NottinghamElt(unit_mul(head, basis_power(2, 15, e, 15))) for e in (0, 1)]
    shaped = next(u for u in candidates if char_eval(chi, u.unit) == 0)
    moved = char_act(shaped, chi)
    replayed = bool(verify_witness(chi, moved, shaped)) and reduce(moved)[0].to_character() == psi
    count = partition_reduced_forms(2, 5, 15, budget).class_count
    ok = found and replayed and count < bound_B(2, 5, 15)
    return ok, f"witness found={found}, construction replayed={replayed}, classes={count} < B=4"


def power_conjugacy_types(budget: int) -> list[tuple[int, int, int]]:
    """Every valid type for p in {2, 3} whose search cost p^m is within budget, capped at POWER_CONJUGACY_MAX_COST."""
    limit = min(budget, POWER_CONJUGACY_MAX_COST)
    max_m = limit.bit_length() - 1
    return [(p, l, m) for p, l, m in valid_types(POWER_CONJUGACY_PRIMES, max_m, max_m) if p ** m <= limit]


def check_power_conjugacy(budget: int, seed: int, samples: int = 50) -> tuple[bool, str]:
    checked, disagreements = 0, []
    types = power_conjugacy_types(budget)
    for p, l, m in types:
        cases = power_conjugacy_sweep(p, l, m, samples, seed, budget)
        checked += len(cases)
        disagreements += [(p, l, m, c.chi.as_dict(), c.n) for c in cases if not c.agrees]
    return not disagreements, f"{checked} cases, disagreements: {disagreements[:5]}"


def _random_type(rng: random.Random, types: list[tuple[int, int, int]]) -> tuple[int, int, int]:
    return rng.choice(types)


def _random_element(rng: random.Random, p: int, precision: int) -> NottinghamElt:
    return NottinghamElt.from_coefficients(p, [rng.randrange(p) for _ in range(precision)])


def _random_unit(rng: random.Random, p: int, precision: int) -> UnitSeries:
    return UnitSeries(as_prime(p), precision, tuple(rng.randrange(p) for _ in range(precision)))


def check_properties(trials: int, seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    types = valid_types(PROPERTY_PRIMES, PROPERTY_MAX_M, PROPERTY_MAX_M)
    failures: dict[str, int] = {}

    def fail(name: str) -> None:
        failures[name] = failures.get(name, 0) + 1

    for _ in range(trials):
        p, l, m = _random_type(rng, types)
        f = _random_unit(rng, p, m)
        exponents = unit_decompose(f, m)
        # exact only modulo p^2-th powers: E_k^(p^2) vanishes in the exponents but not in the series
        recomposed = unit_recompose(exponents, m)
        if unit_decompose(recomposed, m) != exponents:
            fail("decomposition round-trip")
        longer = UnitSeries(f.prime, m + 3, f.coeffs + tuple(rng.randrange(p) for _ in range(3)))
        if unit_decompose(longer, m) != exponents:
            fail("decomposition truncation")
        if m >= p:
            # (1 + g(t))^p = 1 + g(t^p)
            spread = UnitSeries.from_terms(p, m, {k * p: c for k, c in enumerate(f.coeffs, start=1)})
            if unit_pow(f, p) != spread:
                fail("frobenius")
        u, v, w = (_random_element(rng, p, m) for _ in range(3))
        identity = NottinghamElt.identity(p, m)
        if nott_compose(nott_compose(u, v), w) != nott_compose(u, nott_compose(v, w)):
            fail("associativity")
        if nott_compose(u, identity) != u or nott_compose(identity, u) != u:
            fail("identity")
        if not nott_compose(u, nott_inverse(u)).is_identity():
            fail("inverse")
        chi = random_character(p, l, m, rng)
        if char_eval(chi, recomposed) != char_eval(chi, f):
            fail("decomposition round-trip")
        g = _random_unit(rng, p, m)
        if unit_subst(unit_mul(f, g), u) != unit_mul(unit_subst(f, u), unit_subst(g, u)):
            fail("substitution multiplicative")
        if char_act(v, char_act(u, chi)) != char_act(nott_compose(v, u), chi):
            fail("contravariance")
        acted = char_act(u, chi)
        if break_sequence(acted) != break_sequence(chi):
            fail("type invariance")
        if (acted.coefficient(l) - chi.coefficient(l)) % p:
            fail("unit digit at l")
        if m % p and acted.coefficient(m) != chi.coefficient(m):
            fail("coefficient at m")
        form, witness = reduce(chi)
        reduced = form.to_character()
        if not verify_witness(chi, reduced, witness.u):
            fail("reduce soundness")
        again, again_witness = reduce(reduced)
        if again != form or not again_witness.u.is_identity():
            fail("reduce idempotence")
    return not failures, f"{trials} trials, failures: {failures}" if failures else f"{trials} trials, no failures"


def run_acceptance_suite(settings: Settings) -> list[CheckResult]:
    """
    Run every acceptance check with the given budget, seed and trial count.

    Returns:
        list[CheckResult]: One result per check, in a fixed order.
    """
    return [
        _timed("reduced-form-count", check_reduced_form_counts),
        _timed("small-l-equality", lambda: check_small_l_equality(settings.budget)),
        _timed("legacy-consistency", lambda: check_legacy_counts(settings.budget)),
        _timed("counterexample", lambda: check_counterexample(settings.budget)),
        _timed("power-conjugacy", lambda: check_power_conjugacy(settings.budget, settings.seed)),
        _timed("properties", lambda: check_properties(settings.trials, settings.seed)),
    ]
