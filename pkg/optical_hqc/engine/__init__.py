"""Numerical engine: Fock operators, optical families, connection and holonomy"""

from .connection import (ConnectionSample, CurvatureSample, connection_along,
                         connection_at, curvature_at, degenerate_kernel,
                         isospectral_hamiltonian, kerr_hamiltonian,
                         projector_at, w_partial)
from .fock_core import (AlgebraKind, ModeSpace, Op, StateVector, annihilator,
                        apply_local, commutator, creator, embed, make_space,
                        number_op, protected_projector, schwinger_su2,
                        schwinger_su11, weyl_generator)
from .frames import Frame, Projector
from .holonomy_engine import (ArcSegment, HolonomyReport, HolonomyVerdict,
                              LineSegment, LoopPath, RankReport, apply_gate,
                              cutoff_history, det_phase_integral, holonomy,
                              holonomy_algebra_rank, plaquette_generator,
                              plaquette_holonomy)
from .lie_closure import LieClosure, lie_closure
from .optics_ops import (FactorKind, ModelKind, ModelSpec, ParamPoint,
                         beam_splitter, composite_w, displacement,
                         expm_antihermitian, squeeze, two_mode_squeeze,
                         vacuum_frame)

__all__ = [
    "AlgebraKind",
    "ArcSegment",
    "ConnectionSample",
    "CurvatureSample",
    "FactorKind",
    "Frame",
    "HolonomyReport",
    "HolonomyVerdict",
    "LieClosure",
    "LineSegment",
    "LoopPath",
    "ModeSpace",
    "ModelKind",
    "ModelSpec",
    "Op",
    "ParamPoint",
    "Projector",
    "RankReport",
    "StateVector",
    "annihilator",
    "apply_gate",
    "apply_local",
    "beam_splitter",
    "commutator",
    "composite_w",
    "connection_along",
    "connection_at",
    "creator",
    "curvature_at",
    "cutoff_history",
    "degenerate_kernel",
    "det_phase_integral",
    "displacement",
    "embed",
    "expm_antihermitian",
    "holonomy",
    "holonomy_algebra_rank",
    "isospectral_hamiltonian",
    "kerr_hamiltonian",
    "lie_closure",
    "make_space",
    "number_op",
    "plaquette_generator",
    "plaquette_holonomy",
    "projector_at",
    "protected_projector",
    "schwinger_su11",
    "schwinger_su2",
    "squeeze",
    "two_mode_squeeze",
    "vacuum_frame",
    "w_partial",
    "weyl_generator",
]
