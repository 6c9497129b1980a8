"""Optical unitaries and the composite family W for the qubit models.

Every exponential goes through expm_antihermitian (scipy's scaling and
squaring with a degree-13 Pade approximant). All generators have the form
z*A - conj(z)*A^dagger for a raising operator A, so they are exactly
anti-Hermitian matrices.

Factor order: W = F_1 F_2 ... F_K with the leftmost factor applied last to
states. The two-qubit model is
    W = D_1(alpha1) S_1(beta1) U_12(lambda1) V_12(mu1) D_2(alpha2) S_2(beta2)
and the n-qubit model is W = prod_{j=1..n} W_jn (j increasing left to
right) with W_jn = D_j S_j U_jn V_jn and O_nn = 1.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from optical_hqc.config import settings
from optical_hqc.engine.fock_core import (ModeSpace, Op, annihilator, creator,
                                          make_space)
from optical_hqc.engine.frames import Frame
from optical_hqc.utils.exceptions import (ContractViolationError,
                                          InvalidArgumentError,
                                          ModelMismatchError,
                                          UnknownCoordinateError)

logger = logging.getLogger(__name__)


def expm_skew(matrix: np.ndarray, tol: Optional[float] = None) -> np.ndarray:
    """
    Matrix exponential of an anti-Hermitian array

    The input is checked against x^dagger = -x (relative to its largest entry),
    symmetrized to (x - x^dagger)/2 and handed to scipy.linalg.expm.

    Raises:
        ContractViolationError: If the anti-Hermitian defect exceeds tol
    """
    tol = settings.antihermitian_tol if tol is None else tol
    size = matrix.shape[0]
    if not matrix.any():
        return np.eye(size, dtype=complex)

    scale = max(1.0, float(np.max(np.abs(matrix))))
    defect = float(np.max(np.abs(matrix + matrix.conj().T)))
    if defect > tol * scale:
        raise ContractViolationError(
            f"Exponent is not anti-Hermitian: defect {defect:.3e} (tolerance {tol * scale:.3e})"
        )
    skew = 0.5 * (matrix - matrix.conj().T)
    return scipy.linalg.expm(skew)


def expm_antihermitian(x: Op, tol: Optional[float] = None) -> Op:
    """Unitary exp(x) of an anti-Hermitian operator"""
    return Op(x.space, expm_skew(x.entries, tol))


def expm_with_derivative(
    generator: np.ndarray, direction: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """
    exp(G) and its directional derivative along E

    Uses the block-augmented exponential exp([[G, E], [0, G]]), whose upper
    right block is the Frechet derivative of exp at G in direction E.
    """
    size = generator.shape[0]
    if not generator.any():
        return np.eye(size, dtype=complex), np.array(direction, dtype=complex)

    skew = 0.5 * (generator - generator.conj().T)
    block = np.zeros((2 * size, 2 * size), dtype=complex)
    block[:size, :size] = skew
    block[size:, size:] = skew
    block[:size, size:] = direction
    full = scipy.linalg.expm(block)
    return full[:size, :size], full[:size, size:]


def _generator(raising: Op, z: complex) -> Op:
    return z * raising - np.conj(z) * raising.dagger()


def _check_pair(space: ModeSpace, i: int, j: int) -> None:
    space.check_mode(i)
    space.check_mode(j)
    if i == j:
        raise InvalidArgumentError(f"Two-mode operator needs distinct modes, got {i}, {j}")


def displacement(space: ModeSpace, mode: int, alpha: complex) -> Op:
    """Coherent operator D(alpha) = exp(alpha a^dag - conj(alpha) a)"""
    return expm_antihermitian(_generator(creator(space, mode), alpha))


def squeeze(space: ModeSpace, mode: int, beta: complex) -> Op:
    """Squeezed operator S(beta) = exp(beta (a^dag)^2/2 - conj(beta) a^2/2)"""
    up = creator(space, mode)
    return expm_antihermitian(_generator(0.5 * (up @ up), beta))


def beam_splitter(space: ModeSpace, i: int, j: int, lam: complex) -> Op:
    """su(2) operator U(lambda) = exp(lambda a_i^dag a_j - conj(lambda) a_j^dag a_i)"""
    _check_pair(space, i, j)
    return expm_antihermitian(_generator(creator(space, i) @ annihilator(space, j), lam))


def two_mode_squeeze(space: ModeSpace, i: int, j: int, mu: complex) -> Op:
    """su(1,1) operator V(mu) = exp(mu a_i^dag a_j^dag - conj(mu) a_j a_i)"""
    _check_pair(space, i, j)
    return expm_antihermitian(_generator(creator(space, i) @ creator(space, j), mu))


class ModelKind(str, Enum):
    """Model presets"""

    TWO_QUBIT = "two_qubit"
    N_QUBIT = "n_qubit"


class FactorKind(str, Enum):
    """Kinds of factors in W"""

    DISPLACEMENT = "displacement"
    SQUEEZE = "squeeze"
    BEAM_SPLITTER = "beam_splitter"
    TWO_MODE_SQUEEZE = "two_mode_squeeze"


@dataclass(frozen=True)
class FactorSpec:
    """One factor of W: its kind, the modes it acts on and its complex parameter"""

    kind: FactorKind
    modes: Tuple[int, ...]
    parameter: str

    def raising(self, space: ModeSpace) -> Op:
        """Raising operator A with generator z*A - conj(z)*A^dagger"""
        if self.kind == FactorKind.DISPLACEMENT:
            return creator(space, self.modes[0])
        if self.kind == FactorKind.SQUEEZE:
            up = creator(space, self.modes[0])
            return 0.5 * (up @ up)
        i, j = self.modes
        if self.kind == FactorKind.BEAM_SPLITTER:
            return creator(space, i) @ annihilator(space, j)
        return creator(space, i) @ creator(space, j)

    def unitary(self, space: ModeSpace, z: complex) -> Op:
        if self.kind == FactorKind.DISPLACEMENT:
            return displacement(space, self.modes[0], z)
        if self.kind == FactorKind.SQUEEZE:
            return squeeze(space, self.modes[0], z)
        i, j = self.modes
        if self.kind == FactorKind.BEAM_SPLITTER:
            return beam_splitter(space, i, j, z)
        return two_mode_squeeze(space, i, j, z)

    @property
    def is_squeezing(self) -> bool:
        return self.kind in (FactorKind.SQUEEZE, FactorKind.TWO_MODE_SQUEEZE)


@lru_cache(maxsize=32)
def local_raising(kind: FactorKind, n_local: int, cutoff: int) -> np.ndarray:
    """Raising operator of a factor kind on its own 1- or 2-mode space"""
    local_space = ModeSpace(n_modes=n_local, cutoff=cutoff)
    modes = (1,) if n_local == 1 else (1, 2)
    entries = FactorSpec(kind, modes, "").raising(local_space).entries.copy()
    entries.setflags(write=False)
    return entries


def _factor_table(n_qubits: int) -> Tuple[FactorSpec, ...]:
    factors = []
    n = n_qubits
    for j in range(1, n + 1):
        factors.append(FactorSpec(FactorKind.DISPLACEMENT, (j,), f"alpha{j}"))
        factors.append(FactorSpec(FactorKind.SQUEEZE, (j,), f"beta{j}"))
        if j < n:
            factors.append(FactorSpec(FactorKind.BEAM_SPLITTER, (j, n), f"lambda{j}"))
            factors.append(FactorSpec(FactorKind.TWO_MODE_SQUEEZE, (j, n), f"mu{j}"))
    return tuple(factors)


@dataclass(frozen=True)
class ModelSpec:
    """Model kind, qubit count, cutoff and the factor order of W"""

    kind: ModelKind
    n_qubits: int
    cutoff: int
    space: ModeSpace = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        if self.kind == ModelKind.TWO_QUBIT and self.n_qubits != 2:
            raise InvalidArgumentError(
                f"two_qubit model has exactly 2 modes, got {self.n_qubits}"
            )
        if self.n_qubits < 1:
            raise InvalidArgumentError(f"n_qubit model needs n >= 1, got {self.n_qubits}")
        object.__setattr__(self, "space", make_space(self.n_qubits, self.cutoff))

    @classmethod
    def two_qubit(cls, cutoff: int) -> "ModelSpec":
        return cls(ModelKind.TWO_QUBIT, 2, cutoff)

    @classmethod
    def n_qubit(cls, n: int, cutoff: int) -> "ModelSpec":
        return cls(ModelKind.N_QUBIT, n, cutoff)

    @classmethod
    def single_mode(cls, cutoff: int) -> "ModelSpec":
        """n = 1 member of the n-qubit family: W = D_1(alpha1) S_1(beta1)"""
        return cls(ModelKind.N_QUBIT, 1, cutoff)

    def with_cutoff(self, cutoff: int) -> "ModelSpec":
        return ModelSpec(self.kind, self.n_qubits, cutoff)

    @property
    def label(self) -> str:
        if self.kind == ModelKind.TWO_QUBIT:
            return self.kind.value
        return f"{self.kind.value}({self.n_qubits})"

    @property
    def m(self) -> int:
        """Fiber dimension 2**n"""
        return 2**self.n_qubits

    @property
    def factors(self) -> Tuple[FactorSpec, ...]:
        return _factor_table(self.n_qubits)

    @property
    def parameter_names(self) -> Tuple[str, ...]:
        return tuple(f.parameter for f in self.factors)

    @property
    def coordinate_names(self) -> Tuple[str, ...]:
        return tuple(
            f"{name}_{part}" for name in self.parameter_names for part in ("re", "im")
        )

    @property
    def n_coordinates(self) -> int:
        return 2 * len(self.factors)

    def coordinate_index(self, coord: Union[int, str]) -> int:
        """Index of a real coordinate given by index or name (e.g. 'alpha1_re')"""
        if isinstance(coord, (int, np.integer)) and not isinstance(coord, bool):
            if 0 <= coord < self.n_coordinates:
                return int(coord)
            raise UnknownCoordinateError(
                f"Coordinate index {coord} out of range for {self.label} "
                f"({self.n_coordinates} real coordinates)"
            )
        names = self.coordinate_names
        if coord not in names:
            raise UnknownCoordinateError(
                f"Unknown coordinate '{coord}' for {self.label}; expected one of {list(names)}"
            )
        return names.index(coord)

    def origin(self) -> "ParamPoint":
        return ParamPoint(self.kind, self.n_qubits, np.zeros(self.n_coordinates))

    def point(self, values: Optional[Mapping[str, float]] = None) -> "ParamPoint":
        """Point from real-coordinate values by name; missing coordinates are 0"""
        coords = np.zeros(self.n_coordinates)
        for name, value in (values or {}).items():
            coords[self.coordinate_index(name)] = float(value)
        return ParamPoint(self.kind, self.n_qubits, coords)

    def point_from_coords(self, coords: Sequence[float]) -> "ParamPoint":
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (self.n_coordinates,):
            raise ModelMismatchError(
                f"{self.label} has {self.n_coordinates} real coordinates, got {coords.shape}"
            )
        return ParamPoint(self.kind, self.n_qubits, coords)

    def check_point(self, point: "ParamPoint") -> None:
        if (
            point.kind != self.kind
            or point.n_qubits != self.n_qubits
            or point.coords.shape != (self.n_coordinates,)
        ):
            raise ModelMismatchError(
                f"Point of model {point.kind.value}({point.n_qubits}) does not match {self.label}"
            )


@dataclass(frozen=True, eq=False)
class ParamPoint:
    """Point of the parameter manifold stored as (re, im) pairs per complex parameter"""

    kind: ModelKind
    n_qubits: int
    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float)
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    def complex_values(self) -> np.ndarray:
        return self.coords[0::2] + 1j * self.coords[1::2]

    def value(self, k: int) -> complex:
        return complex(self.coords[2 * k], self.coords[2 * k + 1])

    def shifted(self, delta: np.ndarray) -> "ParamPoint":
        return ParamPoint(self.kind, self.n_qubits, self.coords + delta)

    def as_dict(self, spec: ModelSpec) -> Dict[str, float]:
        return {name: float(v) for name, v in zip(spec.coordinate_names, self.coords)}


def factor_unitaries(spec: ModelSpec, point: ParamPoint) -> Tuple[Optional[Op], ...]:
    """Full-space factor unitaries of W; None marks an identity factor"""
    spec.check_point(point)
    values = point.complex_values()
    return tuple(
        None if z == 0 else factor.unitary(spec.space, complex(z))
        for factor, z in zip(spec.factors, values)
    )


def composite_w(spec: ModelSpec, point: ParamPoint) -> Op:
    """
    The isospectral family element W(point)

    Args:
        spec: Model specification
        point: Parameter point of the same model

    Returns:
        Unitary W = F_1 F_2 ... F_K (identity at the origin)

    Raises:
        ModelMismatchError: If the point belongs to another model
    """
    result = None
    for unitary in factor_unitaries(spec, point):
        if unitary is None:
            continue
        result = unitary if result is None else result @ unitary
    return Op.identity(spec.space) if result is None else result


def vacuum_frame(spec: ModelSpec) -> Frame:
    """Qubit basis states |0..00>, |0..01>, ..., |1..11> as frame columns"""
    space = spec.space
    columns = np.zeros((space.dim, spec.m), dtype=complex)
    for col, occupation in enumerate(product((0, 1), repeat=spec.n_qubits)):
        columns[space.index(occupation), col] = 1.0
    return Frame(space, columns)
