"""Path-ordered holonomies, plaquettes and the holonomy-algebra rank probe.

Ordering convention: a loop cut into pieces 1..N (in traversal order) has
    Gamma = exp(X_1) exp(X_2) ... exp(X_N),   X_k = A(midpoint_k)[increment_k]
which solves U'(t) = U(t) A(gamma(t))[gamma'(t)], U(0) = 1. With this order
the holonomy of a small coordinate square traversed +mu, +nu, -mu, -nu is
1 + eps^2 F_{mu nu} with F = dA + A^A, and concatenation reads
Gamma(gamma_2 after gamma_1) = Gamma(gamma_1) Gamma(gamma_2).
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from optical_hqc.config import settings
from optical_hqc.engine.connection import connection_along
from optical_hqc.engine.frames import Frame
from optical_hqc.engine.lie_closure import lie_closure
from optical_hqc.engine.optics_ops import (ModelKind, ModelSpec, ParamPoint,
                                           expm_skew)
from optical_hqc.utils.converters import (det_phase, gate_distance,
                                          unitarity_defect)
from optical_hqc.utils.exceptions import (AccuracyError,
                                          ContractViolationError,
                                          DimensionMismatchError,
                                          InvalidArgumentError,
                                          LoopClosureError, ModelMismatchError)
from optical_hqc.utils.parallel import parallel_map
from optical_hqc.utils.validators import (validate_cutoffs,
                                          validate_parameter_budget)

logger = logging.getLogger(__name__)

Coordinate = Union[int, str]


class SegmentKind(str, Enum):
    """Loop segment shapes"""

    LINE = "line"
    ARC = "arc"


def _frozen_vector(values) -> np.ndarray:
    vector = np.array(values, dtype=float)
    vector.setflags(write=False)
    return vector


@dataclass(frozen=True, eq=False)
class LineSegment:
    """Straight segment between two points of the real coordinate space"""

    start: np.ndarray
    end: np.ndarray
    kind: ClassVar[SegmentKind] = SegmentKind.LINE

    def __post_init__(self):
        object.__setattr__(self, "start", _frozen_vector(self.start))
        object.__setattr__(self, "end", _frozen_vector(self.end))
        if self.start.shape != self.end.shape or self.start.ndim != 1:
            raise InvalidArgumentError(
                f"Line endpoints must be vectors of one length, got {self.start.shape} and {self.end.shape}"
            )

    @property
    def first(self) -> np.ndarray:
        return self.start

    @property
    def last(self) -> np.ndarray:
        return self.end

    @property
    def length(self) -> float:
        return float(np.linalg.norm(self.end - self.start))

    def at(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)[:, None]
        return self.start + t * (self.end - self.start)

    def reversed(self) -> "LineSegment":
        return LineSegment(self.end, self.start)


@dataclass(frozen=True, eq=False)
class ArcSegment:
    """
    Circular arc in the plane of two real coordinates

    Points are center + radius * (cos(theta) e_i + sin(theta) e_j) for theta
    running from theta_start to theta_end; all other coordinates follow center.
    """

    center: np.ndarray
    radius: float
    plane: Tuple[int, int]
    theta_start: float
    theta_end: float
    kind: ClassVar[SegmentKind] = SegmentKind.ARC

    def __post_init__(self):
        object.__setattr__(self, "center", _frozen_vector(self.center))
        object.__setattr__(self, "plane", (int(self.plane[0]), int(self.plane[1])))
        if self.radius <= 0:
            raise InvalidArgumentError(f"Arc radius must be positive, got {self.radius}")
        i, j = self.plane
        if i == j:
            raise InvalidArgumentError("Arc plane needs two distinct coordinates")
        if not (0 <= i < self.center.size and 0 <= j < self.center.size):
            raise InvalidArgumentError(
                f"Arc plane {self.plane} outside {self.center.size} coordinates"
            )

    @property
    def first(self) -> np.ndarray:
        return self.at([0.0])[0]

    @property
    def last(self) -> np.ndarray:
        return self.at([1.0])[0]

    @property
    def length(self) -> float:
        return float(self.radius * abs(self.theta_end - self.theta_start))

    def at(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        theta = self.theta_start + t * (self.theta_end - self.theta_start)
        points = np.tile(self.center, (t.size, 1))
        i, j = self.plane
        points[:, i] += self.radius * np.cos(theta)
        points[:, j] += self.radius * np.sin(theta)
        return points

    def reversed(self) -> "ArcSegment":
        return ArcSegment(self.center, self.radius, self.plane, self.theta_end, self.theta_start)


Segment = Union[LineSegment, ArcSegment]


@dataclass(frozen=True, eq=False)
class Discretization:
    """Midpoints and chord increments of every path piece, in traversal order"""

    midpoints: np.ndarray
    increments: np.ndarray
    nodes: np.ndarray

    @property
    def n_pieces(self) -> int:
        return self.midpoints.shape[0]


@dataclass(frozen=True, eq=False)
class LoopPath:
    """Piecewise path in the real coordinates of one model's parameter manifold"""

    kind: ModelKind
    n_qubits: int
    segments: Tuple[Segment, ...]

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        segments = tuple(self.segments)
        if not segments:
            raise InvalidArgumentError("A loop needs at least one segment")
        sizes = {segment.first.size for segment in segments}
        if len(sizes) != 1:
            raise InvalidArgumentError(f"Segments disagree on the coordinate count: {sorted(sizes)}")
        for k in range(len(segments) - 1):
            gap = float(np.max(np.abs(segments[k].last - segments[k + 1].first)))
            if gap > settings.closure_tol:
                raise LoopClosureError(
                    f"Segment {k + 2} starts {gap:.3e} away from the end of segment {k + 1}"
                )
        object.__setattr__(self, "segments", segments)

    @property
    def start(self) -> np.ndarray:
        return self.segments[0].first

    @property
    def end(self) -> np.ndarray:
        return self.segments[-1].last

    @property
    def n_coordinates(self) -> int:
        return self.start.size

    @property
    def closure_gap(self) -> float:
        return float(np.max(np.abs(self.end - self.start)))

    @property
    def is_closed(self) -> bool:
        return self.closure_gap <= settings.closure_tol

    @property
    def length(self) -> float:
        return sum(segment.length for segment in self.segments)

    def check_model(self, spec: ModelSpec) -> None:
        if (
            self.kind != spec.kind
            or self.n_qubits != spec.n_qubits
            or self.n_coordinates != spec.n_coordinates
        ):
            raise ModelMismatchError(
                f"Loop of model {self.kind.value}({self.n_qubits}) does not match {spec.label}"
            )

    def require_closed(self) -> None:
        if not self.is_closed:
            raise LoopClosureError(
                f"Loop ends {self.closure_gap:.3e} away from its start (tolerance {settings.closure_tol})"
            )

    def allocate(self, n_segments: int) -> List[int]:
        """
        Split n_segments pieces over the segments

        Every segment gets one piece; the rest are shared in proportion to
        length with largest-remainder rounding (evenly for a zero-length loop).
        """
        count = len(self.segments)
        if n_segments < count:
            raise InvalidArgumentError(
                f"{n_segments} pieces cannot cover {count} segments"
            )
        lengths = np.array([segment.length for segment in self.segments])
        total = lengths.sum()
        weights = lengths / total if total > 0 else np.full(count, 1.0 / count)

        spare = n_segments - count
        raw = weights * spare
        pieces = np.floor(raw).astype(int)
        leftover = spare - int(pieces.sum())
        order = np.argsort(-(raw - pieces), kind="stable")
        pieces[order[:leftover]] += 1
        return [int(p) + 1 for p in pieces]

    def discretize(self, n_segments: int) -> Discretization:
        midpoints, increments, nodes = [], [], [self.start[None, :]]
        for segment, pieces in zip(self.segments, self.allocate(n_segments)):
            t = np.linspace(0.0, 1.0, pieces + 1)
            points = segment.at(t)
            midpoints.append(segment.at(0.5 * (t[:-1] + t[1:])))
            increments.append(np.diff(points, axis=0))
            nodes.append(points[1:])
        return Discretization(
            midpoints=np.vstack(midpoints),
            increments=np.vstack(increments),
            nodes=np.vstack(nodes),
        )

    def reversed(self) -> "LoopPath":
        """Same trace traversed backwards"""
        return LoopPath(
            self.kind, self.n_qubits, tuple(s.reversed() for s in reversed(self.segments))
        )

    def concatenate(self, other: "LoopPath") -> "LoopPath":
        """This path followed by other"""
        if other.kind != self.kind or other.n_qubits != self.n_qubits:
            raise ModelMismatchError("Cannot concatenate loops of different models")
        return LoopPath(self.kind, self.n_qubits, self.segments + other.segments)

    @classmethod
    def constant(cls, spec: ModelSpec, point: ParamPoint) -> "LoopPath":
        """Zero-length loop sitting at a point"""
        spec.check_point(point)
        return cls(spec.kind, spec.n_qubits, (LineSegment(point.coords, point.coords),))

    @classmethod
    def circle(
        cls,
        spec: ModelSpec,
        mu: Coordinate,
        nu: Coordinate,
        radius: float,
        center: Optional[ParamPoint] = None,
    ) -> "LoopPath":
        """Full counter-clockwise circle in the (mu, nu) plane starting at center + radius e_mu"""
        center = spec.origin() if center is None else center
        spec.check_point(center)
        plane = (spec.coordinate_index(mu), spec.coordinate_index(nu))
        arc = ArcSegment(center.coords, radius, plane, 0.0, 2.0 * np.pi)
        return cls(spec.kind, spec.n_qubits, (arc,))

    @classmethod
    def square(
        cls, spec: ModelSpec, corner: ParamPoint, mu: Coordinate, nu: Coordinate, eps: float
    ) -> "LoopPath":
        """Coordinate square of side eps traversed +mu, +nu, -mu, -nu from corner"""
        spec.check_point(corner)
        i = spec.coordinate_index(mu)
        j = spec.coordinate_index(nu)
        if i == j:
            raise InvalidArgumentError("A coordinate square needs two distinct coordinates")
        p0 = corner.coords
        p1 = p0.copy()
        p1[i] += eps
        p2 = p1.copy()
        p2[j] += eps
        p3 = p0.copy()
        p3[j] += eps
        segments = (
            LineSegment(p0, p1),
            LineSegment(p1, p2),
            LineSegment(p2, p3),
            LineSegment(p3, p0),
        )
        return cls(spec.kind, spec.n_qubits, segments)


@dataclass(frozen=True, eq=False)
class HolonomyReport:
    """Gate of one loop with its accuracy diagnostics"""

    gate: np.ndarray
    segments_used: int
    unitarity_defect: float
    det_phase: float
    phase_integral: float
    discretization_history: Tuple[Tuple[int, float], ...] = ()
    cutoff_history: Tuple[Tuple[int, float], ...] = ()


class HolonomyVerdict(str, Enum):
    """Outcome of the holonomy-algebra rank probe"""

    AT_MOST_SU = "at_most_su"
    FULL_U = "full_u"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class RankReport:
    """Numerical evidence on the Lie algebra of the holonomy group"""

    model: str
    samples: int
    eps: float
    seed: int
    rank: int
    su_dimension: int
    u_dimension: int
    max_abs_trace: float
    verdict: HolonomyVerdict
    sample_rank: int
    rank_history: Tuple[int, ...]
    halving_deviations: Tuple[float, ...]
    pairs: Tuple[Tuple[str, str], ...]


def _step_unitary(x: np.ndarray, tol: float) -> np.ndarray:
    scale = max(1.0, float(np.max(np.abs(x))))
    defect = float(np.max(np.abs(x + x.conj().T)))
    if defect > tol * scale:
        raise ContractViolationError(
            f"Connection increment is not anti-Hermitian: defect {defect:.3e}"
        )
    return expm_skew(0.5 * (x - x.conj().T))


def _exponents(
    spec: ModelSpec,
    pieces: Discretization,
    frame: Optional[Frame],
    workers: Optional[int],
) -> List[np.ndarray]:
    def evaluate(k: int) -> np.ndarray:
        point = spec.point_from_coords(pieces.midpoints[k])
        return connection_along(spec, point, pieces.increments[k], frame)

    return parallel_map(evaluate, range(pieces.n_pieces), workers)


def _prepare(spec: ModelSpec, loop: LoopPath, n_segments: int) -> Discretization:
    loop.check_model(spec)
    loop.require_closed()
    if n_segments < settings.min_segments:
        raise InvalidArgumentError(
            f"n_segments must be >= {settings.min_segments}, got {n_segments}"
        )
    pieces = loop.discretize(n_segments)
    validate_parameter_budget(spec, np.vstack([pieces.nodes, pieces.midpoints]), "loop")
    return pieces


def _loop_gate(
    spec: ModelSpec,
    loop: LoopPath,
    n_segments: int,
    frame: Optional[Frame],
    antihermitian_tol: float,
    workers: Optional[int],
) -> Tuple[np.ndarray, float]:
    """Ordered product and sum_k Im tr X_k of one discretization"""
    pieces = _prepare(spec, loop, n_segments)
    exponents = _exponents(spec, pieces, frame, workers)

    m = spec.m if frame is None else frame.m
    gate = np.eye(m, dtype=complex)
    phase = 0.0
    for x in exponents:
        gate = gate @ _step_unitary(x, antihermitian_tol)
        phase += float(np.trace(x).imag)
    return gate, phase


def holonomy(
    spec: ModelSpec,
    loop: LoopPath,
    n_segments: int,
    frame: Optional[Frame] = None,
    refinements: int = 1,
    antihermitian_tol: Optional[float] = None,
    workers: Optional[int] = None,
    cutoffs: Optional[Sequence[int]] = None,
) -> HolonomyReport:
    """
    Path-ordered exponential of the connection around a closed loop

    Args:
        spec: Model specification
        loop: Closed loop of the same model
        n_segments: Number of midpoint pieces (>= settings.min_segments)
        frame: Frame replacing the vacuum frame
        refinements: Number of (n, 2n) doublings recorded in discretization_history
        antihermitian_tol: Allowed defect of each increment before symmetrization
            (settings.connection_antihermitian_tol if None)
        workers: Threads for the connection samples
        cutoffs: Ascending cutoffs recorded in cutoff_history (vacuum frame only)

    Returns:
        HolonomyReport for the n_segments discretization

    Raises:
        LoopClosureError: If the loop is open
        ModelMismatchError: If the loop belongs to another model
        ParameterBudgetError: If the loop leaves the parameter budget
    """
    if refinements < 0:
        raise InvalidArgumentError(f"refinements must be >= 0, got {refinements}")
    if cutoffs and frame is not None:
        raise InvalidArgumentError("A cutoff history needs the vacuum frame")
    if antihermitian_tol is None:
        antihermitian_tol = settings.connection_antihermitian_tol

    gate, phase = _loop_gate(spec, loop, n_segments, frame, antihermitian_tol, workers)
    history = []
    coarse, n = gate, n_segments
    for _ in range(refinements):
        fine, _ = _loop_gate(spec, loop, 2 * n, frame, antihermitian_tol, workers)
        history.append((n, gate_distance(coarse, fine)))
        coarse, n = fine, 2 * n

    by_cutoff: Tuple[Tuple[int, float], ...] = ()
    if cutoffs:
        by_cutoff = cutoff_history(spec, loop, n_segments, cutoffs, antihermitian_tol, workers)

    logger.debug(f"Holonomy of {spec.label} with {n_segments} pieces, history {history}")
    return HolonomyReport(
        gate=gate,
        segments_used=n_segments,
        unitarity_defect=unitarity_defect(gate),
        det_phase=det_phase(gate),
        phase_integral=phase,
        discretization_history=tuple(history),
        cutoff_history=by_cutoff,
    )


def det_phase_integral(
    spec: ModelSpec,
    loop: LoopPath,
    n_segments: int,
    frame: Optional[Frame] = None,
    workers: Optional[int] = None,
) -> float:
    """
    Closed line integral of Im tr A by midpoint quadrature

    det Gamma = exp(i * result) holds for the gate built from the same pieces.
    """
    pieces = _prepare(spec, loop, n_segments)
    return float(sum(np.trace(x).imag for x in _exponents(spec, pieces, frame, workers)))


def cutoff_history(
    spec: ModelSpec,
    loop: LoopPath,
    n_segments: int,
    cutoffs: Sequence[int],
    antihermitian_tol: Optional[float] = None,
    workers: Optional[int] = None,
) -> Tuple[Tuple[int, float], ...]:
    """
    Gate distance to the largest-cutoff gate for every cutoff of a sweep

    Raises:
        InvalidArgumentError: If the cutoffs are not strictly ascending
        ResourceBudgetError: If a cutoff exceeds the dimension budget
    """
    cutoffs = validate_cutoffs(cutoffs)
    if antihermitian_tol is None:
        antihermitian_tol = settings.connection_antihermitian_tol
    specs = [spec.with_cutoff(c) for c in cutoffs]
    gates = [
        _loop_gate(s, loop, n_segments, None, antihermitian_tol, workers)[0] for s in specs
    ]
    reference = gates[-1]
    return tuple((c, gate_distance(g, reference)) for c, g in zip(cutoffs, gates))


def plaquette_holonomy(
    spec: ModelSpec,
    point: ParamPoint,
    mu: Coordinate,
    nu: Coordinate,
    eps: float,
    frame: Optional[Frame] = None,
    workers: Optional[int] = None,
) -> np.ndarray:
    """
    Holonomy of the eps x eps coordinate square with corner at point

    Each side gets max(2, ceil(settings.plaquette_scale / eps)) pieces.
    """
    if spec.coordinate_index(mu) == spec.coordinate_index(nu):
        raise InvalidArgumentError("Plaquette needs two distinct coordinates")
    if eps <= 0:
        raise InvalidArgumentError(f"Plaquette size must be positive, got {eps}")
    side = max(2, math.ceil(settings.plaquette_scale / eps))
    loop = LoopPath.square(spec, point, mu, nu, eps)
    tol = settings.connection_antihermitian_tol
    gate, _ = _loop_gate(spec, loop, 4 * side, frame, tol, workers)
    return gate


def plaquette_generator(
    spec: ModelSpec, point: ParamPoint, mu: Coordinate, nu: Coordinate, eps: float
) -> np.ndarray:
    """log(Gamma_plaquette) / eps^2, projected onto anti-Hermitian matrices"""
    log_gate = scipy.linalg.logm(plaquette_holonomy(spec, point, mu, nu, eps))
    return 0.5 * (log_gate - log_gate.conj().T) / eps**2


def _ball_offset(rng: np.random.Generator, size: int, radius: float) -> np.ndarray:
    direction = rng.standard_normal(size)
    direction /= np.linalg.norm(direction)
    return radius * rng.random() ** (1.0 / size) * direction


def holonomy_algebra_rank(
    spec: ModelSpec,
    base_point: ParamPoint,
    samples: int,
    eps: float,
    seed: int,
    coordinates: Optional[Sequence[Coordinate]] = None,
    eps_halving: Optional[float] = None,
    workers: Optional[int] = None,
) -> RankReport:
    """
    Estimate the dimension of the Lie algebra generated by plaquette holonomies

    Every sample draws a coordinate pair and a corner uniformly in a ball of
    radius settings.sample_radius around base_point, both restricted to
    `coordinates` when given. The plaquette generators are closed under
    commutators. The first settings.halving_checks samples are recomputed at
    eps/2 to confirm the quadratic regime.

    Verdicts: full_u when the rank is m^2 and some generator has
    |trace| > settings.trace_full_u; at_most_su when every |trace| is below
    settings.trace_su after at least settings.su_min_samples samples;
    inconclusive otherwise.

    Raises:
        InvalidArgumentError: If samples < 1, eps <= 0 or fewer than two coordinates
        AccuracyError: If the eps/2 generator deviates by more than eps_halving
            (relative; settings.eps_halving_tol if None)
    """
    eps_halving = settings.eps_halving_tol if eps_halving is None else eps_halving
    spec.check_point(base_point)
    if samples < 1:
        raise InvalidArgumentError(f"samples must be >= 1, got {samples}")
    if eps <= 0:
        raise InvalidArgumentError(f"eps must be positive, got {eps}")
    if coordinates is None:
        pool = np.arange(spec.n_coordinates)
    else:
        pool = np.array(sorted({spec.coordinate_index(c) for c in coordinates}))
    if pool.size < 2:
        raise InvalidArgumentError("Rank probe needs at least two coordinates")

    rng = np.random.default_rng(seed)
    draws = []
    for _ in range(samples):
        i, j = rng.choice(pool, size=2, replace=False)
        coords = base_point.coords.copy()
        coords[pool] += _ball_offset(rng, pool.size, settings.sample_radius)
        draws.append((int(i), int(j), coords))
    validate_parameter_budget(spec, np.array([d[2] for d in draws]), "rank probe")

    def evaluate(draw) -> np.ndarray:
        i, j, coords = draw
        return plaquette_generator(spec, spec.point_from_coords(coords), i, j, eps)

    logger.debug(f"Rank probe on {spec.label}: {samples} plaquettes at eps={eps}")
    generators = parallel_map(evaluate, draws, workers)

    deviations = []
    for (i, j, coords), generator in list(zip(draws, generators))[: settings.halving_checks]:
        half = plaquette_generator(spec, spec.point_from_coords(coords), i, j, eps / 2)
        deviation = gate_distance(generator, half) / max(1.0, float(np.linalg.norm(half)))
        deviations.append(deviation)
        if deviation > eps_halving:
            raise AccuracyError(
                f"Plaquette generator changes by {deviation:.3e} (relative) when eps is "
                f"halved from {eps}; eps is outside the quadratic regime"
            )

    closure = lie_closure(generators)
    sample_rank = closure.rank_history[0]
    max_abs_trace = max(float(abs(np.trace(g))) for g in generators)

    m = spec.m
    if closure.dimension == m * m and max_abs_trace > settings.trace_full_u:
        verdict = HolonomyVerdict.FULL_U
    elif max_abs_trace < settings.trace_su and samples >= settings.su_min_samples:
        verdict = HolonomyVerdict.AT_MOST_SU
    else:
        verdict = HolonomyVerdict.INCONCLUSIVE

    names = spec.coordinate_names
    return RankReport(
        model=spec.label,
        samples=samples,
        eps=eps,
        seed=seed,
        rank=closure.dimension,
        su_dimension=m * m - 1,
        u_dimension=m * m,
        max_abs_trace=max_abs_trace,
        verdict=verdict,
        sample_rank=sample_rank,
        rank_history=closure.rank_history,
        halving_deviations=tuple(deviations),
        pairs=tuple((names[i], names[j]) for i, j, _ in draws),
    )


def apply_gate(gate: np.ndarray, x: np.ndarray) -> np.ndarray:
    """
    Process a fiber vector: x -> gate x

    Raises:
        DimensionMismatchError: If the gate is not square or x has another length
    """
    gate = np.asarray(gate, dtype=complex)
    x = np.asarray(x, dtype=complex)
    if gate.ndim != 2 or gate.shape[0] != gate.shape[1]:
        raise DimensionMismatchError(f"Gate must be square, got shape {gate.shape}")
    if x.shape != (gate.shape[0],):
        raise DimensionMismatchError(
            f"Fiber vector of shape {x.shape} does not match gate dimension {gate.shape[0]}"
        )
    return gate @ x
