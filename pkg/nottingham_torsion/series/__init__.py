from .series import (Prime, UnitSeries, NottinghamElt, ExponentVector, as_prime, unit_mul, unit_pow,
                     unit_inverse, basis_power, unit_subst, basis_subst, nott_compose, nott_inverse,
                     unit_decompose, unit_recompose, nottingham_factorization, nottingham_from_factorization,
                     format_unit, format_nottingham_product)
from .series_parser import parse_unit_literal, parse_nottingham_literal
