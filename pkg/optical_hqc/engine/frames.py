"""Stiefel frames and Grassmann projectors on a truncated space"""

from dataclasses import dataclass

import numpy as np

from optical_hqc.engine.fock_core import ModeSpace
from optical_hqc.utils.exceptions import (ContractViolationError,
                                          InvalidArgumentError)


@dataclass(frozen=True, eq=False)
class Frame:
    """m orthonormal columns in a dim-dimensional space (V^dagger V = 1_m)"""

    space: ModeSpace
    columns: np.ndarray

    def __post_init__(self):
        columns = np.array(self.columns, dtype=complex)
        if columns.ndim != 2 or columns.shape[0] != self.space.dim:
            raise InvalidArgumentError(
                f"Frame shape {columns.shape} does not match dim {self.space.dim}"
            )
        columns.setflags(write=False)
        object.__setattr__(self, "columns", columns)

    @property
    def m(self) -> int:
        return self.columns.shape[1]

    def gram_defect(self) -> float:
        gram = self.columns.conj().T @ self.columns
        return float(np.max(np.abs(gram - np.eye(self.m))))

    def check(self, tol: float = 1e-12) -> "Frame":
        """Raise ContractViolationError unless V^dagger V = 1 within tol"""
        defect = self.gram_defect()
        if defect > tol:
            raise ContractViolationError(f"Frame is not orthonormal: defect {defect:.3e}")
        return self

    def rotated(self, g: np.ndarray) -> "Frame":
        """Constant gauge change V -> V g"""
        return Frame(self.space, self.columns @ g)

    def projector(self) -> "Projector":
        return Projector(self.space, self.columns @ self.columns.conj().T)


@dataclass(frozen=True, eq=False)
class Projector:
    """Rank-m orthogonal projector X (X^2 = X, X^dagger = X, tr X = m)"""

    space: ModeSpace
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def rank(self) -> float:
        return float(np.trace(self.matrix).real)

    def idempotency_defect(self) -> float:
        return float(np.max(np.abs(self.matrix @ self.matrix - self.matrix)))

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))
