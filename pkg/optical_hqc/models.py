import math
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from optical_hqc.config import Settings, settings
from optical_hqc.engine.holonomy_engine import HolonomyVerdict
from optical_hqc.engine.optics_ops import ModelKind, ModelSpec

ComplexMatrix = List[List[List[float]]]


class Tolerances(BaseModel):
    """Per-job acceptance tolerances (overridable with --tol name=value)"""

    model_config = ConfigDict(extra="forbid")

    unitarity: float = Field(default=1e-7, gt=0, description="Largest ||G^dag G - 1||")
    det_phase: float = Field(
        default=1e-6, gt=0, description="Largest |arg det G - phase integral| mod 2 pi"
    )
    cutoff_gap: float = Field(
        default=1e-6, gt=0, description="Largest gate distance to the top cutoff of a sweep"
    )
    connection_antihermitian: float = Field(
        default_factory=lambda: settings.connection_antihermitian_tol,
        gt=0,
        description="Largest anti-Hermitian defect of a path increment",
    )
    curvature_antihermitian: float = Field(
        default_factory=lambda: settings.curvature_antihermitian_tol,
        gt=0,
        description="Largest anti-Hermitian defect of F_{mu nu}",
    )
    eps_halving: float = Field(
        default_factory=lambda: settings.eps_halving_tol,
        gt=0,
        description="Largest relative change of a plaquette generator when eps is halved",
    )


class JobConfig(BaseModel):
    """Resolved configuration of one CLI job"""

    model_config = ConfigDict(extra="forbid")

    model: ModelKind = ModelKind.TWO_QUBIT
    qubits: int = Field(default=2, ge=1)
    cutoff: int = Field(default=16, ge=2)
    n_segments: int = Field(default=1024, ge=1)
    refinements: int = Field(default=1, ge=0)
    samples: int = Field(default=200, ge=1)
    eps: float = Field(default=0.02, gt=0)
    seed: int = Field(default=0, ge=0)
    cutoffs: List[int] = Field(default_factory=list)
    point: Dict[str, float] = Field(default_factory=dict)
    mu: Optional[str] = None
    nu: Optional[str] = None
    step: float = Field(default=1e-4, gt=0)
    loop: Optional[str] = Field(default=None, description="Loop file the job was read from")
    output: Optional[str] = None
    tolerances: Tolerances = Field(default_factory=Tolerances)

    @model_validator(mode="after")
    def check_model(self) -> "JobConfig":
        if self.model == ModelKind.TWO_QUBIT and self.qubits != 2:
            raise ValueError(f"two_qubit model has exactly 2 qubits, got {self.qubits}")
        if self.model == ModelKind.N_QUBIT and self.qubits < 2:
            raise ValueError(f"n_qubit model needs qubits >= 2, got {self.qubits}")
        if any(c < 2 for c in self.cutoffs):
            raise ValueError(f"cutoffs must be >= 2, got {self.cutoffs}")
        return self

    def build_spec(self, cutoff: Optional[int] = None) -> ModelSpec:
        return ModelSpec(self.model, self.qubits, self.cutoff if cutoff is None else cutoff)


class LineSegmentModel(BaseModel):
    """Loop-file line segment; omitted coordinates are 0"""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["line"]
    start: Dict[str, float] = Field(default_factory=dict)
    end: Dict[str, float] = Field(default_factory=dict)


class ArcSegmentModel(BaseModel):
    """Loop-file arc; angles in radians, a full turn by default"""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["arc"]
    center: Dict[str, float] = Field(default_factory=dict)
    radius: float = Field(gt=0)
    plane: Tuple[str, str]
    theta_start: float = 0.0
    theta_end: float = 2 * math.pi


SegmentModel = Annotated[Union[LineSegmentModel, ArcSegmentModel], Field(discriminator="kind")]


class LoopFileModel(BaseModel):
    """Loop-description document"""

    model_config = ConfigDict(extra="forbid")

    model: ModelKind
    qubits: Optional[int] = Field(default=None, ge=1)
    segments: List[SegmentModel] = Field(min_length=1)


class ReportMeta(BaseModel):
    """Fields excluded from determinism comparisons"""

    tool: str
    tool_version: str
    generated_at: str


class EngineSnapshot(BaseModel):
    """Engine settings that shape numerical results"""

    model_config = ConfigDict(extra="forbid")

    dim_budget: int
    antihermitian_tol: float
    degeneracy_tol: float
    fd_step: float
    param_warn_magnitude: float
    param_hard_limit: float
    min_segments: int
    closure_tol: float
    rank_rel_tol: float
    rank_abs_tol: float
    trace_full_u: float
    trace_su: float
    su_min_samples: int
    sample_radius: float
    plaquette_scale: float
    halving_checks: int

    @classmethod
    def from_settings(cls, source: Optional[Settings] = None) -> "EngineSnapshot":
        source = settings if source is None else source
        return cls(**{name: getattr(source, name) for name in cls.model_fields})


class CheckFailure(BaseModel):
    """A tolerance check that did not pass"""

    check: str
    value: float
    tolerance: float


class SegmentsEntry(BaseModel):
    segments: int
    gate_distance: float


class CutoffEntry(BaseModel):
    cutoff: int
    gate_distance: float


class HolonomyBody(BaseModel):
    """Body of a holonomy report"""

    kind: Literal["holonomy"] = "holonomy"
    config: JobConfig
    engine: EngineSnapshot
    loop: LoopFileModel
    gate: ComplexMatrix
    segments_used: int
    unitarity_defect: float
    det_phase: float
    phase_integral: float
    discretization_history: List[SegmentsEntry]
    cutoff_history: List[CutoffEntry]
    failures: List[CheckFailure]


class SweepBody(BaseModel):
    """Body of a cutoff convergence sweep report"""

    kind: Literal["sweep"] = "sweep"
    config: JobConfig
    engine: EngineSnapshot
    loop: LoopFileModel
    table: List[CutoffEntry]
    monotone: bool
    final_gap: float
    failures: List[CheckFailure]


class ConnectionBody(BaseModel):
    """Body of a connection report: A_mu at one point for every coordinate"""

    kind: Literal["connection"] = "connection"
    config: JobConfig
    engine: EngineSnapshot
    point: Dict[str, float]
    components: Dict[str, ComplexMatrix]
    antihermitian_defect: float
    failures: List[CheckFailure]


class CurvatureBody(BaseModel):
    """Body of a curvature report: F_{mu nu} at one point"""

    kind: Literal["curvature"] = "curvature"
    config: JobConfig
    engine: EngineSnapshot
    point: Dict[str, float]
    mu: str
    nu: str
    matrix: ComplexMatrix
    antihermitian_defect: float
    failures: List[CheckFailure]


class RankBody(BaseModel):
    """Body of a holonomy-algebra rank probe report"""

    kind: Literal["rank_probe"] = "rank_probe"
    config: JobConfig
    engine: EngineSnapshot
    label: str
    samples: int
    eps: float
    seed: int
    rank: int
    su_dimension: int
    u_dimension: int
    max_abs_trace: float
    verdict: HolonomyVerdict
    sample_rank: int
    rank_history: List[int]
    halving_deviations: List[float]
    failures: List[CheckFailure]


ReportBody = Annotated[
    Union[HolonomyBody, SweepBody, ConnectionBody, CurvatureBody, RankBody],
    Field(discriminator="kind"),
]


class Report(BaseModel):
    """Report document written by every CLI verb"""

    meta: ReportMeta
    body: ReportBody
