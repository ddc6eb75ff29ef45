from .reduction_schema import Witness, WitnessVerdict, WitnessCheck
from .reduction import reduce_mod_p, clear_low_p_part, reduce, verify_witness, is_stage_one
