"""Utility functions and helpers"""

from .converters import (det_phase, gate_distance, matrix_to_pairs,
                         pairs_to_matrix, unitarity_defect, wrap_phase)
from .exceptions import (AccuracyError, ContractViolationError,
                         DimensionMismatchError, HQCException,
                         InvalidArgumentError, LoopClosureError,
                         LoopFormatError, ModelInconsistencyError,
                         ModelMismatchError, ParameterBudgetError,
                         ResourceBudgetError, SpaceMismatchError,
                         ToleranceError, UnknownCoordinateError)
from .parallel import parallel_map
from .validators import (parse_assignments, validate_cutoffs,
                         validate_parameter_budget)

__all__ = [
    "det_phase",
    "gate_distance",
    "matrix_to_pairs",
    "pairs_to_matrix",
    "unitarity_defect",
    "wrap_phase",
    "parallel_map",
    "parse_assignments",
    "validate_cutoffs",
    "validate_parameter_budget",
    "HQCException",
    "InvalidArgumentError",
    "SpaceMismatchError",
    "ModelMismatchError",
    "UnknownCoordinateError",
    "DimensionMismatchError",
    "ParameterBudgetError",
    "LoopFormatError",
    "LoopClosureError",
    "ToleranceError",
    "ContractViolationError",
    "ModelInconsistencyError",
    "AccuracyError",
    "ResourceBudgetError",
]
