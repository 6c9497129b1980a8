"""Validation utilities"""

import logging
from typing import Dict, Iterable, List, Sequence

import numpy as np

from optical_hqc.config import settings
from optical_hqc.utils.exceptions import (InvalidArgumentError,
                                          ParameterBudgetError)

logger = logging.getLogger(__name__)


def validate_parameter_budget(spec, coords: np.ndarray, context: str = "path") -> None:
    """
    Check complex parameter magnitudes of one or more points against the budget

    Args:
        spec: ModelSpec whose factor table names the parameters
        coords: (n_coordinates,) or (k, n_coordinates) real coordinates
        context: Label for messages

    Raises:
        ParameterBudgetError: If any |z| exceeds settings.param_hard_limit
    """
    coords = np.atleast_2d(np.asarray(coords, dtype=float))
    magnitudes = np.abs(coords[:, 0::2] + 1j * coords[:, 1::2]).max(axis=0)

    for factor, magnitude in zip(spec.factors, magnitudes):
        if magnitude > settings.param_hard_limit:
            raise ParameterBudgetError(
                f"{context}: |{factor.parameter}| reaches {magnitude:.4g}, "
                f"above the limit {settings.param_hard_limit}"
            )
        if factor.is_squeezing and magnitude > settings.param_warn_magnitude:
            logger.warning(
                f"{context}: |{factor.parameter}| reaches {magnitude:.4g}; "
                f"truncation error grows quickly with squeezing at cutoff {spec.cutoff}"
            )


def validate_cutoffs(cutoffs: Sequence[int]) -> List[int]:
    """
    Validate a cutoff sweep

    Raises:
        InvalidArgumentError: If the list is empty, contains cutoffs below 2
            or is not strictly ascending
    """
    cutoffs = [int(c) for c in cutoffs]
    if not cutoffs:
        raise InvalidArgumentError("Cutoff sweep needs at least one cutoff")
    if min(cutoffs) < 2:
        raise InvalidArgumentError(f"Cutoffs must be >= 2, got {cutoffs}")
    if any(b <= a for a, b in zip(cutoffs, cutoffs[1:])):
        raise InvalidArgumentError(f"Cutoffs must be strictly ascending, got {cutoffs}")
    return cutoffs


def parse_assignments(items: Iterable[str], option: str = "--tol") -> Dict[str, str]:
    """
    Parse 'name=value' strings

    Raises:
        InvalidArgumentError: If an item has no '=' or an empty name
    """
    parsed: Dict[str, str] = {}
    for item in items:
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise InvalidArgumentError(f"{option} expects name=value, got '{item}'")
        parsed[name] = value.strip()
    return parsed
