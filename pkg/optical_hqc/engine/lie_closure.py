"""Real Lie algebra generated by a set of anti-Hermitian matrices.

Matrices are realified as [Re(x).ravel(), Im(x).ravel()], so the Euclidean
norm of the vector is the Frobenius norm of the matrix. The span is
orthonormalized with an SVD and commutators of the current basis are added
until the dimension stops growing.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from optical_hqc.config import settings
from optical_hqc.utils.exceptions import DimensionMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LieClosure:
    """Orthonormal real basis of the generated algebra and how it grew"""

    basis: np.ndarray
    rank_history: Tuple[int, ...]
    singular_values: np.ndarray

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]


def realify(matrices: Sequence[np.ndarray]) -> np.ndarray:
    """(k, m, m) complex -> (k, 2 m^2) real"""
    stacked = np.asarray(matrices, dtype=complex)
    flat = stacked.reshape(stacked.shape[0], -1)
    return np.concatenate([flat.real, flat.imag], axis=1)


def _complexify(vectors: np.ndarray, m: int) -> np.ndarray:
    half = m * m
    return (vectors[:, :half] + 1j * vectors[:, half:]).reshape(-1, m, m)


def span_basis(
    matrices: Sequence[np.ndarray], rel_tol: float, abs_tol: float
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Orthonormal basis of the real span of a set of square matrices

    Singular values above max(rel_tol * s_max, abs_tol) count toward the
    dimension.

    Returns:
        (basis of shape (r, m, m), all singular values in decreasing order)
    """
    if len(matrices) == 0:
        return np.zeros((0, 0, 0), dtype=complex), np.zeros(0)
    m = np.asarray(matrices[0]).shape[0]
    vectors = realify(matrices)
    _, singular_values, vh = np.linalg.svd(vectors, full_matrices=False)
    if singular_values.size == 0 or singular_values[0] == 0:
        return np.zeros((0, m, m), dtype=complex), singular_values
    threshold = max(rel_tol * singular_values[0], abs_tol)
    rank = int(np.count_nonzero(singular_values > threshold))
    return _complexify(vh[:rank], m), singular_values


def lie_closure(
    generators: Sequence[np.ndarray],
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
    max_rounds: int = 16,
) -> LieClosure:
    """
    Close a set of generators under commutators

    Args:
        generators: Square matrices of one common size
        rel_tol: Relative singular value cut (settings.rank_rel_tol if None)
        abs_tol: Absolute singular value floor (settings.rank_abs_tol if None)
        max_rounds: Upper bound on commutator rounds

    Returns:
        LieClosure with the dimension after every round in rank_history

    Raises:
        DimensionMismatchError: If the generators are not square matrices of one size
    """
    rel_tol = settings.rank_rel_tol if rel_tol is None else rel_tol
    abs_tol = settings.rank_abs_tol if abs_tol is None else abs_tol

    shapes = {np.shape(g) for g in generators}
    if len(shapes) > 1 or any(len(s) != 2 or s[0] != s[1] for s in shapes):
        raise DimensionMismatchError(f"Generators must be square and equal-sized, got {shapes}")

    basis, singular_values = span_basis(list(generators), rel_tol, abs_tol)
    history = [basis.shape[0]]
    for _ in range(max_rounds):
        if basis.shape[0] == 0:
            break
        brackets = [
            x @ y - y @ x
            for i, x in enumerate(basis)
            for y in basis[i + 1:]
        ]
        grown, singular_values = span_basis(list(basis) + brackets, rel_tol, abs_tol)
        history.append(grown.shape[0])
        logger.debug(f"Commutator round: dimension {basis.shape[0]} -> {grown.shape[0]}")
        if grown.shape[0] == basis.shape[0]:
            break
        basis = grown

    return LieClosure(basis=basis, rank_history=tuple(history), singular_values=singular_values)
