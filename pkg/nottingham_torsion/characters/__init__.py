from .characters_schema import Character, TypeLM, StandardExpansion, ReducedForm
from .characters import (char_eval, char_act, break_sequence, validate_type, require_type, standard_expansion,
                         is_reduced, reduced_form_from_character, enumerate_characters, enumerate_reduced_forms,
                         random_character, scalar_mul, reduce_mod_p_character, mod_p_break)
from .character_codec import (parse_character_literal, parse_character, format_character, format_character_pairs,
                              character_to_json, character_from_json)
