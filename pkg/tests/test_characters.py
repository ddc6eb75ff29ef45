import pytest

from nottingham_torsion.characters import (ReducedForm, StandardExpansion, TypeLM, break_sequence, char_act,
                                           char_eval, character_from_json, character_to_json,
                                           enumerate_characters, enumerate_reduced_forms, format_character,
                                           is_reduced, mod_p_break, parse_character, parse_character_literal,
                                           random_character, reduce_mod_p_character, reduced_form_from_character,
                                           scalar_mul, standard_expansion, validate_type)
from nottingham_torsion.series import NottinghamElt, Prime, UnitSeries, nott_compose
from nottingham_torsion.utils.errors import DomainError, InconsistencyError, LiteralParseError, UsageError
from tests.conftest import char


def test_character_normalises_coefficients():
    chi = char(2, {5: 5, 7: 4, 15: 2})
    assert chi.as_dict() == {5: 1, 15: 2}
    assert chi.bound == 15
    with pytest.raises(UsageError):
        char(2, {4: 1})


def test_depth_accounts_for_p_times_unit_index():
    assert char(3, {2: 1}).bound == 6
    assert char(3, {2: 3}).bound == 2


def test_eval_on_basis_elements_reads_coefficients():
    chi = char(2, {5: 1, 15: 2})
    assert char_eval(chi, UnitSeries.basis(2, 5, 15)) == 1
    assert char_eval(chi, UnitSeries.basis(2, 15, 15)) == 2
    # E_10 = E_5^2 mod U_11 in characteristic 2
    assert char_eval(chi, UnitSeries.basis(2, 10, 15)) == 2


def test_eval_of_a_compound_unit():
    chi = char(2, {5: 1, 15: 2})
    assert char_eval(chi, UnitSeries.from_terms(2, 15, {5: 1, 10: 1})) == 1


def test_eval_rejects_short_units():
    with pytest.raises(UsageError):
        char_eval(char(2, {5: 1, 15: 2}), UnitSeries.one(2, 10))


def test_identity_acts_trivially():
    chi = char(3, {1: 4, 2: 3, 4: 3})
    assert char_act(NottinghamElt.identity(3, 6), chi) == chi


def test_action_of_the_counterexample_element():
    chi = char(2, {5: 1, 15: 2})
    u = NottinghamElt(UnitSeries.from_terms(2, 15, {3: 1, 4: 1}))
    assert char_act(u, chi).as_dict() == {3: 2, 5: 1, 11: 2, 15: 2}


def test_action_is_contravariant(rng):
    for p, l, m in ((2, 3, 7), (3, 2, 7), (5, 1, 6)):
        chi = random_character(p, l, m, rng)
        u = NottinghamElt.from_coefficients(p, [rng.randrange(p) for _ in range(m)])
        v = NottinghamElt.from_coefficients(p, [rng.randrange(p) for _ in range(m)])
        assert char_act(v, char_act(u, chi)) == char_act(nott_compose(v, u), chi)


def test_action_preserves_type_and_the_digit_at_l(rng):
    for _ in range(20):
        chi = random_character(3, 2, 8, rng)
        u = NottinghamElt.from_coefficients(3, [rng.randrange(3) for _ in range(8)])
        acted = char_act(u, chi)
        assert break_sequence(acted) == TypeLM(2, 8)
        assert acted.coefficient(2) % 3 == chi.coefficient(2) % 3
        assert acted.coefficient(8) == chi.coefficient(8)


def test_break_sequence():
    assert break_sequence(char(2, {5: 1, 15: 2})) == TypeLM(5, 15)
    assert break_sequence(char(2, {3: 1})) == TypeLM(3, 6)
    assert break_sequence(char(3, {1: 1, 2: 3, 4: 3})) == TypeLM(1, 4)
    with pytest.raises(DomainError):
        break_sequence(char(2, {5: 2}))


@pytest.mark.parametrize("p, l, m, valid", [
    (2, 5, 15, True), (2, 3, 6, True), (2, 3, 8, False), (3, 2, 7, True), (3, 3, 9, False), (3, 2, 5, False),
])
def test_validate_type(p, l, m, valid):
    assert validate_type(p, l, m) is valid


def test_standard_expansion_digits():
    expansion = standard_expansion(char(3, {1: 4, 2: 7, 4: 3}))
    assert expansion.x_dict() == {1: 1, 2: 1}
    assert expansion.a_dict() == {1: 1, 2: 2, 4: 1}
    assert expansion.to_character() == char(3, {1: 4, 2: 7, 4: 3})


def test_standard_expansion_rejects_a_wrong_claim():
    with pytest.raises(InconsistencyError):
        standard_expansion(char(3, {1: 1, 2: 1, 7: 3}), claimed=TypeLM(1, 7))


def test_standard_expansion_validates_digits():
    with pytest.raises(DomainError):
        StandardExpansion(Prime(2), TypeLM(5, 15), ((5, 1),), ())


def test_is_reduced():
    assert is_reduced(char(2, {5: 1, 15: 2}))
    assert is_reduced(char(2, {5: 1, 11: 2, 15: 2}))
    assert not is_reduced(char(2, {5: 1, 7: 2, 15: 2}))
    assert not is_reduced(char(3, {1: 1, 2: 3, 4: 3}))
    assert not is_reduced(char(3, {1: 4, 4: 3}))
    # p = 2, m = 2l: the window contains l
    assert is_reduced(char(2, {3: 3}))


def test_reduced_form_conversions():
    form = ReducedForm(Prime(2), 3, 6, 1, ((3, 1), (5, 1)))
    chi = form.to_character()
    assert chi.as_dict() == {3: 3, 5: 2}
    assert reduced_form_from_character(chi) == form
    with pytest.raises(DomainError):
        reduced_form_from_character(char(2, {1: 1, 3: 1, 5: 2}))


def test_enumeration_counts():
    assert len(enumerate_characters(2, 5, 15)) == 512
    assert len(enumerate_characters(3, 2, 7)) == 972
    forms = enumerate_reduced_forms(2, 5, 15)
    assert len(forms) == 4
    assert all(is_reduced(f.to_character()) for f in forms)
    with pytest.raises(DomainError):
        enumerate_characters(2, 2, 4)


def test_scalar_multiples():
    chi = char(3, {1: 1, 4: 3})
    assert scalar_mul(4, chi).as_dict() == {1: 4, 4: 3}
    assert scalar_mul(3, chi).as_dict() == {1: 3}
    assert not scalar_mul(3, chi).is_surjective


def test_mod_p_reduction():
    chi = char(3, {1: 4, 2: 7, 4: 3})
    assert reduce_mod_p_character(chi) == {1: 1, 2: 1}
    assert mod_p_break(chi) == 2
    with pytest.raises(DomainError):
        mod_p_break(char(3, {4: 3}))


def test_character_literal():
    assert parse_character_literal("5:1,15:2", 2) == char(2, {5: 1, 15: 2})
    assert parse_character_literal(" 5 : 1 , 15 : 2 ", 2) == char(2, {5: 1, 15: 2})


@pytest.mark.parametrize("text, offset", [("4:1", 0), ("5:4", 2), ("5:1,5:1", 4), ("5:1;7:1", 3), ("x", 0)])
def test_character_literal_errors(text, offset):
    with pytest.raises(LiteralParseError) as error:
        parse_character_literal(text, 2)
    assert error.value.offset == offset


def test_character_text_and_json_forms():
    chi = char(2, {5: 1, 15: 2})
    assert format_character(chi) == "p=2; 5:1,15:2"
    assert parse_character(format_character(chi)) == chi
    assert character_to_json(chi) == {"p": 2, "coeffs": {"5": 1, "15": 2}}
    assert character_from_json('{"p": 2, "coeffs": {"5": 1, "15": 2}}') == chi
    with pytest.raises(LiteralParseError):
        character_from_json({"coeffs": {}})
