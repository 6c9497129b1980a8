"""Kerr reference Hamiltonian, isospectral family and the canonical connection.

The connection coefficient of a real coordinate mu is
    A_mu = V^dagger W^dagger (d_mu W) V
with V the fixed vacuum frame. Writing W = F_1 ... F_K and T_k = F_{k+1} ... F_K V,
only the factor carrying mu is differentiated:
    A_mu = T_k^dagger (F_k^dagger dF_k) T_k
Factors act on one or two modes, so F_k and dF_k are computed on their local
mode space and applied to the (dim, m) columns of T_k without building
full-space matrices.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from optical_hqc.config import settings
from optical_hqc.engine.fock_core import ModeSpace, Op, apply_local
from optical_hqc.engine.frames import Frame, Projector
from optical_hqc.engine.optics_ops import (FactorKind, ModelSpec, ParamPoint,
                                           composite_w, expm_skew,
                                           expm_with_derivative,
                                           factor_unitaries, local_raising,
                                           vacuum_frame)
from optical_hqc.utils.exceptions import (InvalidArgumentError,
                                          ModelInconsistencyError)

logger = logging.getLogger(__name__)

Coordinate = Union[int, str]


@dataclass(frozen=True, eq=False)
class ConnectionSample:
    """A_mu for every real coordinate mu at a point, stacked as (n_coords, m, m)"""

    point: ParamPoint
    coordinate_names: Tuple[str, ...]
    components: np.ndarray

    def component(self, coord: Coordinate) -> np.ndarray:
        if isinstance(coord, str):
            return self.components[self.coordinate_names.index(coord)]
        return self.components[coord]

    def antihermitian_defect(self) -> float:
        adjoint = np.conj(np.swapaxes(self.components, 1, 2))
        return float(np.max(np.abs(self.components + adjoint)))


@dataclass(frozen=True, eq=False)
class CurvatureSample:
    """F_{mu nu} at a point"""

    point: ParamPoint
    mu: str
    nu: str
    matrix: np.ndarray

    def antihermitian_defect(self) -> float:
        return float(np.max(np.abs(self.matrix + self.matrix.conj().T)))


def kerr_hamiltonian(spec: ModelSpec) -> Op:
    """H_0 = sum_i N_i (N_i - 1) with hbar = X = 1"""
    occupations = spec.space.occupations()
    energies = (occupations * (occupations - 1)).sum(axis=1)
    return Op(spec.space, np.diag(energies.astype(complex)))


def degenerate_kernel(h0: Op, tol: Optional[float] = None) -> Frame:
    """
    Orthonormal frame of the zero eigenspace of a Hermitian reference Hamiltonian

    A diagonal h0 yields basis columns in increasing index order, which for
    the Kerr models is the lexicographic qubit order |0..0>, |0..1>, ...

    Raises:
        InvalidArgumentError: If h0 is not Hermitian
        ModelInconsistencyError: If the kernel dimension is not 2**n_modes
    """
    tol = settings.degeneracy_tol if tol is None else tol
    entries = h0.entries
    if np.max(np.abs(entries - entries.conj().T)) > tol:
        raise InvalidArgumentError("Reference Hamiltonian is not Hermitian")

    diagonal = np.diag(entries)
    if not (entries - np.diag(diagonal)).any():
        indices = np.flatnonzero(np.abs(diagonal) < tol)
        columns = np.eye(h0.space.dim, dtype=complex)[:, indices]
    else:
        eigenvalues, eigenvectors = scipy.linalg.eigh(entries)
        columns = eigenvectors[:, np.abs(eigenvalues) < tol]

    expected = 2**h0.space.n_modes
    if columns.shape[1] != expected:
        raise ModelInconsistencyError(
            f"Zero eigenspace has dimension {columns.shape[1]}, expected {expected}"
        )
    logger.debug(f"Degenerate kernel of dimension {expected} found")
    return Frame(h0.space, columns).check()


def isospectral_hamiltonian(spec: ModelSpec, point: ParamPoint) -> Op:
    """H_lambda = W H_0 W^dagger"""
    w = composite_w(spec, point)
    return w @ kerr_hamiltonian(spec) @ w.dagger()


def projector_at(spec: ModelSpec, point: ParamPoint) -> Projector:
    """P(lambda) = W V V^dagger W^dagger"""
    moved = composite_w(spec, point).entries @ vacuum_frame(spec).columns
    return Projector(spec.space, moved @ moved.conj().T)


def _direction(raising: np.ndarray, axis: int) -> np.ndarray:
    """Derivative of z*A - conj(z)*A^dagger along Re z (axis 0) or Im z (axis 1)"""
    adjoint = raising.conj().T
    if axis == 0:
        return raising - adjoint
    return 1j * (raising + adjoint)


def w_partial(spec: ModelSpec, point: ParamPoint, coord: Coordinate) -> Op:
    """
    d W / d mu by the product rule over the factors of W

    The differentiated factor uses the block-augmented exponential, so the
    result is exact to machine precision.
    """
    spec.check_point(point)
    k, axis = divmod(spec.coordinate_index(coord), 2)
    factor = spec.factors[k]
    space = spec.space
    z = point.value(k)

    raising = factor.raising(space).entries
    generator = z * raising - np.conj(z) * raising.conj().T
    _, derivative = expm_with_derivative(generator, _direction(raising, axis))

    unitaries = factor_unitaries(spec, point)
    result = derivative
    for unitary in reversed(unitaries[:k]):
        if unitary is not None:
            result = unitary.entries @ result
    for unitary in unitaries[k + 1:]:
        if unitary is not None:
            result = result @ unitary.entries
    return Op(space, result)


def _readonly(matrix: np.ndarray) -> np.ndarray:
    matrix.setflags(write=False)
    return matrix


@lru_cache(maxsize=128)
def _local_unitary(kind: FactorKind, n_local: int, cutoff: int, z: complex) -> np.ndarray:
    raising = local_raising(kind, n_local, cutoff)
    return _readonly(expm_skew(z * raising - np.conj(z) * raising.conj().T))


@lru_cache(maxsize=128)
def _local_pullback(
    kind: FactorKind, n_local: int, cutoff: int, z: complex, axis: int
) -> np.ndarray:
    """F^dagger dF of one factor along one real axis, on the factor's local space"""
    raising = local_raising(kind, n_local, cutoff)
    generator = z * raising - np.conj(z) * raising.conj().T
    unitary, derivative = expm_with_derivative(generator, _direction(raising, axis))
    return _readonly(unitary.conj().T @ derivative)


def _frame_columns(spec: ModelSpec, frame: Optional[Frame]) -> np.ndarray:
    if frame is None:
        return vacuum_frame(spec).columns
    if frame.space != spec.space:
        raise InvalidArgumentError(
            f"Frame lives on {frame.space}, model space is {spec.space}"
        )
    return frame.check().columns


def _tail_columns(
    spec: ModelSpec, values: np.ndarray, columns: np.ndarray
) -> List[np.ndarray]:
    """T_k = F_{k+1} ... F_K V for every factor index k"""
    space: ModeSpace = spec.space
    tails: List[np.ndarray] = [columns] * len(spec.factors)
    current = columns
    for k in reversed(range(len(spec.factors))):
        tails[k] = current
        z = complex(values[k])
        if z != 0:
            factor = spec.factors[k]
            unitary = _local_unitary(factor.kind, len(factor.modes), spec.cutoff, z)
            current = apply_local(space, factor.modes, unitary, current)
    return tails


def _pulled_back(
    spec: ModelSpec, k: int, z: complex, axis: int, tail: np.ndarray
) -> np.ndarray:
    factor = spec.factors[k]
    local = _local_pullback(factor.kind, len(factor.modes), spec.cutoff, z, axis)
    return tail.conj().T @ apply_local(spec.space, factor.modes, local, tail)


def connection_along(
    spec: ModelSpec,
    point: ParamPoint,
    direction: Sequence[float],
    frame: Optional[Frame] = None,
) -> np.ndarray:
    """
    Contraction sum_mu A_mu direction_mu of the connection with a tangent vector

    Args:
        spec: Model specification
        point: Parameter point
        direction: Real tangent vector of length spec.n_coordinates
        frame: Frame replacing the vacuum frame (gauge checks)

    Returns:
        (m, m) anti-Hermitian matrix
    """
    spec.check_point(point)
    direction = np.asarray(direction, dtype=float)
    if direction.shape != (spec.n_coordinates,):
        raise InvalidArgumentError(
            f"Direction needs {spec.n_coordinates} components, got {direction.shape}"
        )
    columns = _frame_columns(spec, frame)
    m = columns.shape[1]
    if not direction.any():
        return np.zeros((m, m), dtype=complex)

    values = point.complex_values()
    tails = _tail_columns(spec, values, columns)
    result = np.zeros((m, m), dtype=complex)
    for index in np.flatnonzero(direction):
        k, axis = divmod(int(index), 2)
        result += direction[index] * _pulled_back(
            spec, k, complex(values[k]), axis, tails[k]
        )
    return result


def connection_at(
    spec: ModelSpec, point: ParamPoint, frame: Optional[Frame] = None
) -> ConnectionSample:
    """
    A_mu = V^dagger W^dagger (d_mu W) V for every real coordinate mu

    Args:
        spec: Model specification
        point: Parameter point
        frame: Frame replacing the vacuum frame (gauge checks)

    Returns:
        ConnectionSample with one anti-Hermitian (m, m) block per coordinate
    """
    spec.check_point(point)
    columns = _frame_columns(spec, frame)
    values = point.complex_values()
    tails = _tail_columns(spec, values, columns)

    components = np.empty((spec.n_coordinates, columns.shape[1], columns.shape[1]), dtype=complex)
    for index in range(spec.n_coordinates):
        k, axis = divmod(index, 2)
        components[index] = _pulled_back(spec, k, complex(values[k]), axis, tails[k])
    components.setflags(write=False)
    return ConnectionSample(point, spec.coordinate_names, components)


def curvature_at(
    spec: ModelSpec,
    point: ParamPoint,
    mu: Coordinate,
    nu: Coordinate,
    step: Optional[float] = None,
    frame: Optional[Frame] = None,
) -> CurvatureSample:
    """
    F_{mu nu} = d_mu A_nu - d_nu A_mu + [A_mu, A_nu]

    The outer derivatives are central differences with one Richardson level:
    (4 D(h/2) - D(h)) / 3.

    Raises:
        InvalidArgumentError: If mu == nu or step <= 0
    """
    i = spec.coordinate_index(mu)
    j = spec.coordinate_index(nu)
    if i == j:
        raise InvalidArgumentError(
            f"Curvature needs two distinct coordinates, got {spec.coordinate_names[i]} twice"
        )
    h = settings.fd_step if step is None else step
    if h <= 0:
        raise InvalidArgumentError(f"Finite-difference step must be positive, got {h}")

    e_i = np.zeros(spec.n_coordinates)
    e_i[i] = 1.0
    e_j = np.zeros(spec.n_coordinates)
    e_j[j] = 1.0

    def central(component: np.ndarray, along: np.ndarray, s: float) -> np.ndarray:
        forward = connection_along(spec, point.shifted(s * along), component, frame)
        backward = connection_along(spec, point.shifted(-s * along), component, frame)
        return (forward - backward) / (2 * s)

    def derivative(component: np.ndarray, along: np.ndarray) -> np.ndarray:
        return (4 * central(component, along, h / 2) - central(component, along, h)) / 3

    a_i = connection_along(spec, point, e_i, frame)
    a_j = connection_along(spec, point, e_j, frame)
    matrix = derivative(e_j, e_i) - derivative(e_i, e_j) + (a_i @ a_j - a_j @ a_i)
    names = spec.coordinate_names
    return CurvatureSample(point, names[i], names[j], matrix)
