import random

import pytest

from nottingham_torsion.characters import char_eval
from nottingham_torsion.series import (NottinghamElt, Prime, UnitSeries, basis_power, basis_subst, format_unit,
                                       nott_compose, nott_inverse, nottingham_factorization,
                                       nottingham_from_factorization, parse_nottingham_literal, parse_unit_literal,
                                       unit_decompose, unit_inverse, unit_mul, unit_pow, unit_recompose, unit_subst)
from nottingham_torsion.utils.errors import LiteralParseError, UsageError
from tests.conftest import char


def _random_unit(rng: random.Random, p: int, precision: int) -> UnitSeries:
    return UnitSeries(Prime(p), precision, tuple(rng.randrange(p) for _ in range(precision)))


def test_prime_rejects_composites_and_out_of_range():
    assert Prime(31).psq == 961
    for bad in (1, 4, 9, 37):
        with pytest.raises(UsageError):
            Prime(bad)


def test_unit_mul_truncates_at_precision():
    one_plus_t = UnitSeries.basis(2, 1, 3)
    assert unit_mul(one_plus_t, one_plus_t) == UnitSeries.from_terms(2, 3, {2: 1})


def test_unit_mul_rejects_mismatched_operands():
    with pytest.raises(UsageError):
        unit_mul(UnitSeries.one(2, 3), UnitSeries.one(3, 3))
    with pytest.raises(UsageError):
        unit_mul(UnitSeries.one(2, 3), UnitSeries.one(2, 4))


def test_unit_inverse_of_one_plus_t():
    assert unit_inverse(UnitSeries.basis(2, 1, 3)) == UnitSeries(Prime(2), 3, (1, 1, 1))


def test_negative_and_large_powers():
    one_plus_t = UnitSeries.basis(3, 1, 3)
    assert unit_pow(one_plus_t, 8) == UnitSeries(Prime(3), 3, (2, 1, 2))
    assert unit_pow(one_plus_t, -1) == unit_inverse(one_plus_t)
    assert unit_pow(one_plus_t, 9) == UnitSeries.one(3, 3)


def test_basis_power_matches_repeated_multiplication():
    expected = UnitSeries.one(5, 12)
    for _ in range(7):
        expected = unit_mul(expected, UnitSeries.basis(5, 2, 12))
    assert basis_power(5, 2, 7, 12) == expected


def test_decompose_known_units():
    assert unit_decompose(UnitSeries.from_terms(3, 3, {1: 2}), 3).as_dict() == {1: 8, 2: 2}
    assert unit_decompose(UnitSeries.from_terms(2, 3, {1: 1, 2: 1}), 3).as_dict() == {1: 3, 3: 1}


def test_decompose_then_recompose_is_identity_modulo_bound():
    f = UnitSeries.from_terms(3, 8, {1: 1, 3: 2, 4: 1, 8: 2})
    assert unit_recompose(unit_decompose(f, 8), 8) == f


def test_decomposition_drops_p_squared_powers():
    f = UnitSeries.from_terms(2, 4, {4: 1})
    exponents = unit_decompose(f, 4)
    assert exponents.as_dict() == {}
    assert unit_recompose(exponents, 4).is_one()
    assert char_eval(char(2, {1: 1, 3: 2}, 4), f) == 0


@pytest.mark.parametrize("p, m", [(2, 4), (2, 9), (2, 15), (3, 9), (3, 14), (5, 12)])
def test_decomposition_round_trips_on_exponents(rng, p, m):
    for _ in range(20):
        f = _random_unit(rng, p, m)
        exponents = unit_decompose(f, m)
        assert unit_decompose(unit_recompose(exponents, m), m) == exponents


def test_decomposition_ignores_coefficients_above_the_bound(rng):
    for p, m in ((2, 7), (3, 10), (5, 6)):
        f = _random_unit(rng, p, m + 4)
        g = UnitSeries(f.prime, m + 4, f.coeffs[:m] + tuple(rng.randrange(p) for _ in range(4)))
        assert unit_decompose(f, m) == unit_decompose(g, m)


def test_decompose_requires_enough_precision():
    with pytest.raises(UsageError):
        unit_decompose(UnitSeries.one(2, 3), 5)


def test_substitution_into_basis_element():
    u = NottinghamElt(UnitSeries.from_terms(2, 15, {3: 1, 4: 1}))
    expected = UnitSeries.from_terms(2, 15, {11: 1, 14: 1, 15: 1})
    assert unit_subst(UnitSeries.basis(2, 11, 15), u) == expected
    assert basis_subst(11, u) == expected


def test_substitution_is_multiplicative(rng):
    for p, m in ((2, 9), (3, 8), (5, 6)):
        f, g = _random_unit(rng, p, m), _random_unit(rng, p, m)
        u = NottinghamElt(_random_unit(rng, p, m))
        assert unit_subst(unit_mul(f, g), u) == unit_mul(unit_subst(f, u), unit_subst(g, u))


def test_basis_subst_reads_only_a_prefix():
    long = NottinghamElt(UnitSeries.from_terms(3, 10, {1: 1, 2: 2, 9: 1}))
    short = long.truncate(3)
    assert basis_subst(7, short, precision=10) == basis_subst(7, long)


def test_self_composition_of_t_plus_t_squared_is_identity_at_precision_two():
    u = NottinghamElt.from_coefficients(2, [1, 0])
    assert nott_compose(u, u).is_identity()


def test_inverse_is_two_sided():
    u = NottinghamElt.from_coefficients(5, [1, 4, 0, 2, 3, 3, 1])
    inverse = nott_inverse(u)
    assert nott_compose(u, inverse).is_identity()
    assert nott_compose(inverse, u).is_identity()


def test_composition_is_associative():
    u = NottinghamElt.from_coefficients(3, [1, 2, 0, 1, 1, 2])
    v = NottinghamElt.from_coefficients(3, [0, 1, 1, 0, 2, 1])
    w = NottinghamElt.from_coefficients(3, [2, 2, 1, 1, 0, 0])
    assert nott_compose(nott_compose(u, v), w) == nott_compose(u, nott_compose(v, w))


def test_product_form_round_trip():
    u = nottingham_from_factorization(3, 4, [(2, 1), (4, 2)])
    assert str(u) == "t*(1+t^2)^1*(1+t^4)^2"
    assert nottingham_factorization(u) == ((2, 1), (4, 2))
    assert parse_nottingham_literal(str(u), 3, 4) == u
    assert str(NottinghamElt.identity(3, 4)) == "t"


def test_unit_literals():
    f = parse_unit_literal("1+t^3+t^4", 2, 6)
    assert f == UnitSeries.from_terms(2, 6, {3: 1, 4: 1})
    assert format_unit(f) == "1+t^3+t^4"
    assert parse_unit_literal("(1+t)^-1", 2, 3) == UnitSeries(Prime(2), 3, (1, 1, 1))
    assert parse_unit_literal("1 + 4*t^2", 3, 3) == UnitSeries.from_terms(3, 3, {2: 1})


def test_powers_of_non_unit_factors():
    assert parse_unit_literal("1+(t+t^2)^2", 2, 4) == UnitSeries.from_terms(2, 4, {2: 1, 4: 1})
    assert parse_unit_literal("(2+2*t)^2*2^-2", 3, 3) == UnitSeries.from_terms(3, 3, {1: 2, 2: 1})
    assert parse_unit_literal("1+(t+t^3)^3", 3, 9) == UnitSeries.from_terms(3, 9, {3: 1, 9: 1})
    with pytest.raises(LiteralParseError):
        parse_nottingham_literal("t^2*t^-1", 2, 3)


@pytest.mark.parametrize("text, offset", [("1+t^x", 4), ("1+t^", 4), ("(1+t", 4)])
def test_malformed_literals_report_byte_offsets(text, offset):
    with pytest.raises(LiteralParseError) as error:
        parse_unit_literal(text, 2, 5)
    assert error.value.offset == offset


def test_literals_must_have_the_right_shape():
    with pytest.raises(LiteralParseError):
        parse_unit_literal("t+t^2", 2, 3)
    with pytest.raises(LiteralParseError):
        parse_nottingham_literal("1+t", 2, 3)
