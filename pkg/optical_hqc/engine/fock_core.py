"""Truncated multimode Fock space and the bosonic operator algebra.

Basis states |n_1, ..., n_k> are ordered row-major with mode 1 as the most
significant digit, so the index of an occupation tuple is
sum_i n_i * cutoff**(n_modes - i). Every mode keeps the levels
0 .. cutoff-1; a creation operator annihilates the top level.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Optional, Sequence, Tuple

import numpy as np

from optical_hqc.config import settings
from optical_hqc.utils.exceptions import (InvalidArgumentError,
                                          ResourceBudgetError,
                                          SpaceMismatchError)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModeSpace:
    """n_modes oscillators sharing a common Fock cutoff"""

    n_modes: int
    cutoff: int

    @property
    def dim(self) -> int:
        return self.cutoff**self.n_modes

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.cutoff,) * self.n_modes

    def index(self, occupation: Sequence[int]) -> int:
        """Basis index of an occupation tuple"""
        if len(occupation) != self.n_modes:
            raise InvalidArgumentError(
                f"Occupation {tuple(occupation)} does not match {self.n_modes} modes"
            )
        if any(n < 0 or n >= self.cutoff for n in occupation):
            raise InvalidArgumentError(
                f"Occupation {tuple(occupation)} outside levels 0..{self.cutoff - 1}"
            )
        return int(np.ravel_multi_index(tuple(occupation), self.shape))

    def occupation(self, index: int) -> Tuple[int, ...]:
        """Occupation tuple of a basis index"""
        if not 0 <= index < self.dim:
            raise InvalidArgumentError(f"Basis index {index} outside [0, {self.dim})")
        return tuple(int(n) for n in np.unravel_index(index, self.shape))

    def occupations(self) -> np.ndarray:
        """(dim, n_modes) table of occupations in basis order"""
        grid = np.indices(self.shape).reshape(self.n_modes, -1)
        return grid.T

    def check_mode(self, mode: int) -> None:
        if not 1 <= mode <= self.n_modes:
            raise InvalidArgumentError(
                f"Mode {mode} out of range 1..{self.n_modes}"
            )


def _frozen(matrix: np.ndarray) -> np.ndarray:
    matrix.setflags(write=False)
    return matrix


@dataclass(frozen=True, eq=False)
class Op:
    """Dense complex operator on the basis of a ModeSpace"""

    space: ModeSpace
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.shape != (self.space.dim, self.space.dim):
            raise InvalidArgumentError(
                f"Operator shape {entries.shape} does not match dim {self.space.dim}"
            )
        object.__setattr__(self, "entries", _frozen(entries))

    def _check(self, other: "Op") -> None:
        if other.space != self.space:
            raise SpaceMismatchError(
                f"Operators live on different spaces: {self.space} vs {other.space}"
            )

    def dagger(self) -> "Op":
        return Op(self.space, self.entries.conj().T.copy())

    def __matmul__(self, other: "Op") -> "Op":
        self._check(other)
        return Op(self.space, self.entries @ other.entries)

    def __add__(self, other: "Op") -> "Op":
        self._check(other)
        return Op(self.space, self.entries + other.entries)

    def __sub__(self, other: "Op") -> "Op":
        self._check(other)
        return Op(self.space, self.entries - other.entries)

    def __mul__(self, scalar: complex) -> "Op":
        return Op(self.space, self.entries * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "Op":
        return Op(self.space, -self.entries)

    def apply(self, state: "StateVector") -> "StateVector":
        if state.space != self.space:
            raise SpaceMismatchError(
                f"State on {state.space} cannot be acted on by operator on {self.space}"
            )
        return StateVector(self.space, self.entries @ state.amplitudes)

    @classmethod
    def identity(cls, space: ModeSpace) -> "Op":
        return cls(space, np.eye(space.dim, dtype=complex))


@dataclass(frozen=True, eq=False)
class StateVector:
    """Amplitudes over the basis of a ModeSpace (not necessarily normalized)"""

    space: ModeSpace
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if amplitudes.shape != (self.space.dim,):
            raise InvalidArgumentError(
                f"State length {amplitudes.shape} does not match dim {self.space.dim}"
            )
        object.__setattr__(self, "amplitudes", _frozen(amplitudes))

    @classmethod
    def basis(cls, space: ModeSpace, occupation: Sequence[int]) -> "StateVector":
        amplitudes = np.zeros(space.dim, dtype=complex)
        amplitudes[space.index(occupation)] = 1.0
        return cls(space, amplitudes)

    def amplitude(self, occupation: Sequence[int]) -> complex:
        return complex(self.amplitudes[self.space.index(occupation)])

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def make_space(
    n_modes: int, cutoff: int, dim_budget: Optional[int] = None
) -> ModeSpace:
    """
    Build a truncated mode space

    Args:
        n_modes: Number of oscillators (>= 1)
        cutoff: Retained Fock levels per mode (>= 2)
        dim_budget: Largest allowed dimension (settings.dim_budget if None)

    Returns:
        ModeSpace with dim = cutoff**n_modes

    Raises:
        InvalidArgumentError: If n_modes < 1 or cutoff < 2
        ResourceBudgetError: If the dimension exceeds the budget
    """
    if n_modes < 1:
        raise InvalidArgumentError(f"n_modes must be >= 1, got {n_modes}")
    if cutoff < 2:
        raise InvalidArgumentError(f"cutoff must be >= 2, got {cutoff}")

    budget = settings.dim_budget if dim_budget is None else dim_budget
    dim = cutoff**n_modes
    if dim > budget:
        raise ResourceBudgetError(
            f"Truncated space dim {dim} ({n_modes} modes, cutoff {cutoff}) "
            f"exceeds the dimension budget {budget}"
        )
    return ModeSpace(n_modes=n_modes, cutoff=cutoff)


def _single_mode_lowering(cutoff: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, cutoff, dtype=float)), k=1).astype(complex)


def _place(space: ModeSpace, single: np.ndarray, mode: int) -> np.ndarray:
    factors = [np.eye(space.cutoff, dtype=complex)] * space.n_modes
    factors[mode - 1] = single
    return reduce(np.kron, factors)


def annihilator(space: ModeSpace, mode: int) -> Op:
    """a_mode: |n> -> sqrt(n)|n-1> on the given mode, identity elsewhere"""
    space.check_mode(mode)
    return Op(space, _place(space, _single_mode_lowering(space.cutoff), mode))


def creator(space: ModeSpace, mode: int) -> Op:
    """a_mode^dagger as the exact matrix adjoint of the annihilator"""
    return annihilator(space, mode).dagger()


def number_op(space: ModeSpace, mode: int) -> Op:
    """N_mode = a^dagger a, built as the exact integer diagonal"""
    space.check_mode(mode)
    levels = space.occupations()[:, mode - 1]
    return Op(space, np.diag(levels.astype(complex)))


def commutator(x: Op, y: Op) -> Op:
    """[x, y] = xy - yx"""
    return x @ y - y @ x


class AlgebraKind(str, Enum):
    """Boson representation selector for weyl_generator"""

    U_N = "u_n"
    U_N1_1 = "u_n1_1"


def weyl_generator(
    space: ModeSpace, i: int, j: int, algebra: AlgebraKind = AlgebraKind.U_N
) -> Op:
    """
    Boson-represented generator E_ij of u(n) or u(n-1,1), n = space.n_modes

    u(n):      E_ij = a_i^dagger a_j
    u(n-1,1):  E_ij = a_i^dagger a_j (i, j < n),  E_in = a_i^dagger a_n^dagger,
               E_ni = a_n a_i,  E_nn = a_n^dagger a_n + 1
    """
    space.check_mode(i)
    space.check_mode(j)
    algebra = AlgebraKind(algebra)
    n = space.n_modes

    if algebra == AlgebraKind.U_N or (i < n and j < n):
        return creator(space, i) @ annihilator(space, j)
    if i == n and j == n:
        return number_op(space, n) + Op.identity(space)
    if j == n:
        return creator(space, i) @ creator(space, n)
    return annihilator(space, n) @ annihilator(space, j)


def schwinger_su2(space: ModeSpace, i: int = 1, j: int = 2) -> Tuple[Op, Op, Op]:
    """(J+, J-, J3) = (a_i^dag a_j, a_j^dag a_i, (N_i - N_j)/2)"""
    if i == j:
        raise InvalidArgumentError("Schwinger generators need two distinct modes")
    j_plus = creator(space, i) @ annihilator(space, j)
    j_minus = creator(space, j) @ annihilator(space, i)
    j_3 = 0.5 * (number_op(space, i) - number_op(space, j))
    return j_plus, j_minus, j_3


def schwinger_su11(space: ModeSpace, i: int = 1, j: int = 2) -> Tuple[Op, Op, Op]:
    """(K+, K-, K3) = (a_i^dag a_j^dag, a_j a_i, (N_i + N_j + 1)/2)"""
    if i == j:
        raise InvalidArgumentError("Schwinger generators need two distinct modes")
    k_plus = creator(space, i) @ creator(space, j)
    k_minus = annihilator(space, j) @ annihilator(space, i)
    k_3 = 0.5 * (number_op(space, i) + number_op(space, j) + Op.identity(space))
    return k_plus, k_minus, k_3


def protected_projector(
    space: ModeSpace, margin: int, max_total: Optional[int] = None
) -> Op:
    """
    Orthogonal projector onto the truncation-safe basis states

    Args:
        space: Mode space
        margin: Keep states with every occupation <= cutoff - 1 - margin
        max_total: Additionally keep only states with total occupation <= max_total

    Returns:
        Diagonal 0/1 projector
    """
    if not 0 <= margin < space.cutoff:
        raise InvalidArgumentError(
            f"margin must be in [0, {space.cutoff - 1}], got {margin}"
        )
    occupations = space.occupations()
    keep = occupations.max(axis=1) <= space.cutoff - 1 - margin
    if max_total is not None:
        keep &= occupations.sum(axis=1) <= max_total
    return Op(space, np.diag(keep.astype(complex)))


def apply_local(
    space: ModeSpace, modes: Sequence[int], matrix: np.ndarray, columns: np.ndarray
) -> np.ndarray:
    """
    Act with an operator on a subset of modes without forming the full matrix

    Args:
        space: Mode space of the columns
        modes: 1-based modes the local matrix acts on, in its own tensor order
        matrix: (cutoff**k, cutoff**k) local operator
        columns: (dim, m) block of vectors

    Returns:
        (dim, m) block with the local operator applied to every column
    """
    for mode in modes:
        space.check_mode(mode)
    k = len(modes)
    width = columns.shape[1]
    axes = [mode - 1 for mode in modes]

    tensor = columns.reshape(space.shape + (width,))
    tensor = np.moveaxis(tensor, axes, list(range(k)))
    moved_shape = tensor.shape
    tensor = matrix @ tensor.reshape(space.cutoff**k, -1)
    tensor = np.moveaxis(tensor.reshape(moved_shape), list(range(k)), axes)
    return tensor.reshape(space.dim, width)


def embed(space: ModeSpace, modes: Sequence[int], matrix: np.ndarray) -> Op:
    """Full-space operator of a local matrix acting on the given modes"""
    identity = np.eye(space.dim, dtype=complex)
    return Op(space, apply_local(space, modes, matrix, identity))
