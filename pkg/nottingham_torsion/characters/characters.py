"""
Characters U_1 -> Z/p^2 on the dual basis Z_j of {E_j = 1 + t^j, p does not divide j}.
"""
from __future__ import annotations

import itertools
import logging
import random
from math import gcd
from typing import Sequence

from nottingham_torsion.series import (NottinghamElt, Prime, UnitSeries, as_prime, basis_subst,
                                       unit_decompose)
from nottingham_torsion.utils.errors import DomainError, InconsistencyError, UsageError
from nottingham_torsion.utils.util import coprime_indices
from .characters_schema import Character, ReducedForm, StandardExpansion, TypeLM

logger = logging.getLogger(__name__)


def char_eval(chi: Character, f: UnitSeries) -> int:
    """
    chi(f) = sum_j e_j c_j mod p^2, where e = unit_decompose(f, chi.bound).

    Raises:
        UsageError: If the primes differ or f is tracked below chi's bound.
    """
    if f.prime != chi.prime:
        raise UsageError(f"mismatched primes {chi.prime.p} and {f.prime.p}")
    if f.precision < chi.bound:
        raise UsageError(f"unit precision {f.precision} is below character bound {chi.bound}")
    exponents = unit_decompose(f, chi.bound)
    return sum(exponents.get(j) * c for j, c in chi.coeffs) % chi.prime.psq


def char_act(u: NottinghamElt, chi: Character) -> Character:
    """
    The character u.chi with (u.chi)(f) = chi(f o u), i.e. c'_j = chi(E_j o u).

    Raises:
        UsageError: If the primes differ or u is tracked below chi's bound.
    """
    if u.prime != chi.prime:
        raise UsageError(f"mismatched primes {chi.prime.p} and {u.prime.p}")
    if u.precision < chi.bound:
        raise UsageError(f"element precision {u.precision} is below character bound {chi.bound}")
    v = u.truncate(chi.bound)
    values = {j: char_eval(chi, basis_subst(j, v)) for j in coprime_indices(chi.prime.p, 1, chi.bound)}
    return Character.from_mapping(chi.prime, values, bound=chi.bound)


def break_sequence(chi: Character) -> TypeLM:
    """
    The type <l, m>: l is the largest index with a unit coefficient and
    m = max(largest nonzero index, p * l).

    Raises:
        DomainError: If chi is not surjective.
    """
    units = chi.unit_indices
    if not units:
        raise DomainError("character is not surjective onto Z/p^2")
    l = units[-1]
    support = [j for j, _ in chi.coeffs]
    return TypeLM(l, max(support[-1], chi.prime.p * l))


def validate_type(p: int, l: int, m: int) -> bool:
    """True iff <l, m> is a break sequence for p: gcd(l, p) = 1, m >= pl, and m > pl implies gcd(m, p) = 1."""
    if l < 1 or m < 1:
        return False
    return gcd(l, p) == 1 and m >= p * l and (m == p * l or gcd(m, p) == 1)


def require_type(p: int, l: int, m: int) -> Prime:
    prime = as_prime(p)
    if not validate_type(prime.p, l, m):
        raise DomainError(f"<{l},{m}> is not a valid type for p={prime.p}")
    return prime


def standard_expansion(chi: Character, claimed: TypeLM | None = None) -> StandardExpansion:
    """
    Split c_j = x_j + p a_j into digits.

    Args:
        chi (Character): A surjective character.
        claimed (TypeLM, optional): A type the caller asserts chi has.

    Returns:
        StandardExpansion: The digits; x is supported on indices <= l.

    Raises:
        DomainError: If chi is not surjective.
        InconsistencyError: If chi has a unit coefficient above the claimed l, or another type.
    """
    actual = break_sequence(chi)
    if claimed is not None:
        above = [j for j in chi.unit_indices if j > claimed.l]
        if above:
            raise InconsistencyError(f"unit coefficients at {above} lie above l={claimed.l}")
        if actual != claimed:
            raise InconsistencyError(f"character has type {actual}, not {claimed}")
    p = chi.prime.p
    x = tuple((j, c % p) for j, c in chi.coeffs if c % p)
    a = tuple((j, c // p) for j, c in chi.coeffs if c // p)
    return StandardExpansion(chi.prime, actual, x, a)


def is_reduced(chi: Character) -> bool:
    """
    True iff chi is x_l Z_l + sum_(m-l <= j <= m) b_j p Z_j with x_l != 0 and,
    when p does not divide m, b_m != 0.

    Outside the window [m - l, m] the coefficient at l must be the digit x_l itself.
    """
    if not chi.is_surjective:
        return False
    t = break_sequence(chi)
    p = chi.prime.p
    lo = t.m - t.l
    for j, c in chi.coeffs:
        if j == t.l:
            if j < lo and c >= p:
                return False
        elif j < lo:
            return False
    if t.m % p and chi.coefficient(t.m) == 0:
        return False
    return True


def reduced_form_from_character(chi: Character) -> ReducedForm:
    """
    Raises:
        DomainError: If chi is not in reduced form.
    """
    if not is_reduced(chi):
        raise DomainError(f"character {chi.as_dict()} is not in reduced form")
    t = break_sequence(chi)
    p = chi.prime.p
    c_l = chi.coefficient(t.l)
    b = []
    for j in coprime_indices(p, t.m - t.l, t.m):
        c = chi.coefficient(j)
        b.append((j, c // p))
    return ReducedForm(chi.prime, t.l, t.m, c_l % p, tuple(b))


def _coefficient_choices(prime: Prime, l: int, m: int) -> tuple[list[int], list[Sequence[int]]]:
    p, psq = prime.p, prime.psq
    indices = coprime_indices(p, 1, m)
    choices = []
    for j in indices:
        if j < l:
            choices.append(range(psq))
        elif j == l:
            choices.append([c for c in range(psq) if c % p])
        elif j == m:
            choices.append(range(p, psq, p))
        else:
            choices.append(range(0, psq, p))
    return indices, choices


def random_character(p: int, l: int, m: int, rng: random.Random) -> Character:
    """
    A uniformly random character of type <l, m>.

    Raises:
        DomainError: If <l, m> is not a valid type for p.
    """
    prime = require_type(p, l, m)
    indices, choices = _coefficient_choices(prime, l, m)
    return Character.from_mapping(prime, {j: rng.choice(c) for j, c in zip(indices, choices)}, bound=m)


def enumerate_characters(p: int, l: int, m: int) -> list[Character]:
    """
    Every surjective character of exact type <l, m>, in lexicographic order of
    (c_1, c_2, ...) over the p-coprime indices.

    Raises:
        DomainError: If <l, m> is not a valid type for p.
    """
    prime = require_type(p, l, m)
    indices, choices = _coefficient_choices(prime, l, m)
    target = TypeLM(l, m)
    found = []
    for values in itertools.product(*choices):
        chi = Character.from_mapping(prime, dict(zip(indices, values)), bound=m)
        if break_sequence(chi) == target:
            found.append(chi)
    logger.debug("enumerated %d characters of type <%d,%d> for p=%d", len(found), l, m, prime.p)
    return found


def enumerate_reduced_forms(p: int, l: int, m: int) -> list[ReducedForm]:
    """
    Every reduced form of type <l, m>; there are B(p, l, m) of them.

    Raises:
        DomainError: If <l, m> is not a valid type for p.
    """
    prime = require_type(p, l, m)
    p = prime.p
    window = coprime_indices(p, m - l, m)
    digit_choices = [range(1, p) if j == m else range(p) for j in window]
    forms = []
    for x_l in range(1, p):
        for digits in itertools.product(*digit_choices):
            forms.append(ReducedForm(prime, l, m, x_l, tuple(zip(window, digits))))
    return forms


def scalar_mul(n: int, chi: Character) -> Character:
    """n * chi, coefficientwise mod p^2. Surjectivity is not re-checked here."""
    result = Character.from_mapping(chi.prime, {j: n * c for j, c in chi.coeffs}, bound=chi.bound)
    if chi.is_surjective and not result.is_surjective:
        logger.debug("%d * chi is not surjective for p=%d", n, chi.prime.p)
    return result


def reduce_mod_p_character(chi: Character) -> dict[int, int]:
    """The order-p character chi mod p, as its nonzero values x_j = c_j mod p."""
    p = chi.prime.p
    return {j: c % p for j, c in chi.coeffs if c % p}


def mod_p_break(chi: Character) -> int:
    """The break <l> of chi mod p.

    Raises:
        DomainError: If chi mod p is zero.
    """
    residues = reduce_mod_p_character(chi)
    if not residues:
        raise DomainError("character is zero mod p")
    return max(residues)
