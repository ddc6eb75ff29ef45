"""
Constructive reduction of a type <l, m> character to reduced form.

Stage 1 (`reduce_mod_p`) kills every unit coefficient below l. Stage 2
(`clear_low_p_part`) kills every p-multiple below the window [m - l, m]. Each
step acts by an element whose kernel value against the current character is
divisible by p, so every intermediate pair is a strict equivalence, and the
steps compose into one witness: applying u_1 and then u_2 is acting by
u_2 o u_1.
"""
from __future__ import annotations

import logging

from nottingham_torsion.characters import (Character, ReducedForm, break_sequence, char_act, char_eval,
                                           reduced_form_from_character)
from nottingham_torsion.series import NottinghamElt, UnitSeries, basis_power, nott_compose, unit_mul
from nottingham_torsion.utils.errors import DomainError, InconsistencyError, PreconditionError
from nottingham_torsion.utils.util import mod_inverse
from .reduction_schema import Witness, WitnessCheck, WitnessVerdict

logger = logging.getLogger(__name__)


def _apply_step(current: Character, accumulated: NottinghamElt, step: NottinghamElt) -> tuple[Character, NottinghamElt]:
    return char_act(step, current), nott_compose(step, accumulated)


def reduce_mod_p(chi: Character) -> tuple[Character, Witness]:
    """
    Make chi strictly equivalent to a character whose only unit coefficient is at l.

    Positions i = l-1 .. 1 (p not dividing i) are swept top-down. A unit digit x_i is
    killed by s = t(1 + c t^(l-i))(1 + t^l)^f with x_i + i c x_l = 0 mod p, and f
    chosen so that the current character vanishes on s/t mod p. Acting by s only
    moves unit digits at positions below i, so one pass suffices.

    Returns:
        tuple[Character, Witness]: The stage-1 character and the accumulated witness.

    Raises:
        DomainError: If chi is not surjective.
    """
    t = break_sequence(chi)
    chi = chi.rebound(t.m)
    prime, p, l, n = chi.prime, chi.prime.p, t.l, t.m
    current = chi
    accumulated = NottinghamElt.identity(prime, n)
    for i in range(l - 1, 0, -1):
        if i % p == 0:
            continue
        x_i = current.coefficient(i) % p
        if x_i == 0:
            continue
        x_l = current.coefficient(l) % p
        c = (-x_i * mod_inverse(i * x_l, p)) % p
        head = UnitSeries.from_terms(prime, n, {l - i: c})
        f = (-char_eval(current, head) * mod_inverse(x_l, p)) % p
        step = NottinghamElt(unit_mul(head, basis_power(prime, l, f, n)))
        logger.debug("stage 1: position %d, c=%d, f=%d", i, c, f)
        current, accumulated = _apply_step(current, accumulated, step)
    leftover = [j for j in current.unit_indices if j != l]
    if leftover:
        raise InconsistencyError(f"stage 1 left unit coefficients at {leftover}")
    return current, Witness.certify(chi, accumulated)


def is_stage_one(chi: Character) -> bool:
    """True iff chi is surjective and its only unit coefficient is at l."""
    return chi.is_surjective and len(chi.unit_indices) == 1


def clear_low_p_part(chi: Character) -> tuple[Character, Witness]:
    """
    Move a stage-1 character to reduced form.

    For j = 1 .. m-l-1 with target T = m-l-j prime to p, act by
    u_j = t(1 + t^(l+j))^d (1 + t^m)^e, where b_T + d T b_m = 0 mod p clears the
    p-digit at T and e makes the current character vanish on u_j/t. Positions
    above T are untouched by step j.

    Returns:
        tuple[Character, Witness]: The reduced character and the accumulated witness.

    Raises:
        PreconditionError: If chi has a unit coefficient other than at l.
    """
    if not is_stage_one(chi):
        raise PreconditionError("character is not in stage-1 form (unit part at l only)")
    t = break_sequence(chi)
    chi = chi.rebound(t.m)
    prime, p, l, m = chi.prime, chi.prime.p, t.l, t.m
    e_m = UnitSeries.basis(prime, m, m)
    current = chi
    accumulated = NottinghamElt.identity(prime, m)
    for j in range(1, m - l):
        target = m - l - j
        if target % p == 0:
            continue
        b_target = current.coefficient(target) // p
        if b_target == 0:
            continue
        # chi(E_m) = p b_m; for m = lp this is p x_l
        b_m = char_eval(current, e_m) // p
        d = (-b_target * mod_inverse(target * b_m, p)) % p
        lifted = basis_power(prime, l + j, d, m)
        e = (-(char_eval(current, lifted) // p) * mod_inverse(b_m, p)) % p
        step = NottinghamElt(unit_mul(lifted, basis_power(prime, m, e, m)))
        logger.debug("stage 2: target %d, d=%d, e=%d", target, d, e)
        current, accumulated = _apply_step(current, accumulated, step)
    return current, Witness.certify(chi, accumulated)


def reduce(chi: Character) -> tuple[ReducedForm, Witness]:
    """
    A reduced form strictly equivalent to chi, with a witness u: u.chi is the form
    and chi(u/t) = 0 mod p.

    Raises:
        DomainError: If chi is not surjective.
    """
    stage_one, first = reduce_mod_p(chi)
    reduced, second = clear_low_p_part(stage_one)
    chi = chi.rebound(break_sequence(chi).m)
    witness = Witness.certify(chi, nott_compose(second.u, first.u))
    form = reduced_form_from_character(reduced)
    logger.debug("reduced %s to %s", chi.as_dict(), reduced.as_dict())
    return form, witness


def verify_witness(chi: Character, psi: Character, u: NottinghamElt) -> WitnessCheck:
    """
    Check that u.chi = psi and chi(u/t) = 0 mod p.

    Returns:
        WitnessCheck: Truthy when valid; otherwise the verdict names the failed condition.
    """
    if chi.prime != psi.prime or u.prime != chi.prime:
        return WitnessCheck(WitnessVerdict.INCOMPATIBLE, "primes differ")
    bound = max(chi.bound, psi.bound)
    if u.precision < bound:
        return WitnessCheck(WitnessVerdict.INCOMPATIBLE, f"element precision {u.precision} is below {bound}")
    chi = chi.rebound(bound)
    acted = char_act(u.truncate(bound), chi)
    if acted != psi:
        return WitnessCheck(WitnessVerdict.ACTION_MISMATCH, f"u.chi = {acted.as_dict()}")
    kernel = char_eval(chi, u.unit.truncate(bound))
    if kernel % chi.prime.p:
        return WitnessCheck(WitnessVerdict.KERNEL_VIOLATION, f"chi(u/t) = {kernel}")
    return WitnessCheck(WitnessVerdict.VALID)
