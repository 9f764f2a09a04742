"""Numerical toolkit for quasi-Banach Calderon-Lozanovskii spaces."""

__version__ = "0.1.0"

from .orlicz import (INF, OrliczError, OrliczFunction, Piece, evaluate, from_dict, generalized_inverse,
                     inverse_clause_violations, nodes_function, renormalize)
from .vectors import COUNTING, INTERVAL, Carrier, SimpleVector, VectorError
from .spaces import SpaceDescriptor, SpaceError, a_E, find_unit_vector_sequence, norm_E, space_from_dict
from .indices import (DEFAULT_GRID, DegenerateRegime, GridSpec, PreconditionError, Regime, check_delta2,
                      check_delta_2str, check_delta_epsilon, estimate_lower_index, extend_constant)
from .modular import (CLSpace, aoki_rolewicz_exponent, condition_v_constant, luxemburg_norm,
                      mazur_orlicz_f_norm, minimized_quasi_triangle_constant, modular, quasi_triangle_constant)
from .witnesses import (HorizonError, UnsupportedSpace, WitnessBundle, blowup_search, build_nonatomic_witness,
                        build_nonatomic_zero_witness, build_sequence_witness, interleave, verify_linf_copy)

__all__ = [
    "INF", "OrliczError", "OrliczFunction", "Piece", "evaluate", "from_dict", "generalized_inverse",
    "inverse_clause_violations", "nodes_function", "renormalize",
    "COUNTING", "INTERVAL", "Carrier", "SimpleVector", "VectorError",
    "SpaceDescriptor", "SpaceError", "a_E", "find_unit_vector_sequence", "norm_E", "space_from_dict",
    "DEFAULT_GRID", "DegenerateRegime", "GridSpec", "PreconditionError", "Regime", "check_delta2",
    "check_delta_2str", "check_delta_epsilon", "estimate_lower_index", "extend_constant",
    "CLSpace", "aoki_rolewicz_exponent", "condition_v_constant", "luxemburg_norm", "mazur_orlicz_f_norm",
    "minimized_quasi_triangle_constant", "modular", "quasi_triangle_constant",
    "HorizonError", "UnsupportedSpace", "WitnessBundle", "blowup_search", "build_nonatomic_witness",
    "build_nonatomic_zero_witness", "build_sequence_witness", "interleave", "verify_linf_copy",
]
