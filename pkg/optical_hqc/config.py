"""Configuration management for the holonomy engine"""

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Engine settings with Pydantic BaseSettings"""

    app_name: str = Field(default="optical-hqc", description="Tool name in reports")
    app_version: str = Field(default="1.0.0", description="Tool version in reports")

    log_level: str = Field(
        default="INFO",
        description="Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)",
    )
    workers: int = Field(
        default=1,
        ge=1,
        le=64,
        description="Threads used for independent connection evaluations. Use 1 for reproducible profiling.",
    )

    dim_budget: int = Field(
        default=4096, ge=4, description="Largest truncated Hilbert-space dimension"
    )
    antihermitian_tol: float = Field(
        default=1e-12,
        gt=0,
        description="Relative tolerance of x + x^dagger before symmetrization in expm",
    )
    degeneracy_tol: float = Field(
        default=1e-9, gt=0, description="Eigenvalue threshold for the Kerr kernel"
    )
    fd_step: float = Field(
        default=1e-4, gt=0, description="Central-difference step for curvature"
    )

    param_warn_magnitude: float = Field(
        default=1.0,
        gt=0,
        description="Squeezing magnitudes |beta|, |mu| above this value log a warning",
    )
    param_hard_limit: float = Field(
        default=2.0, gt=0, description="Largest complex parameter magnitude on a path"
    )
    min_segments: int = Field(
        default=8, ge=1, description="Smallest number of pieces for a holonomy"
    )
    closure_tol: float = Field(
        default=1e-12, gt=0, description="Largest gap between joined segments and loop ends"
    )
    connection_antihermitian_tol: float = Field(
        default=1e-9,
        gt=0,
        description="Default anti-Hermitian defect allowed for connection increments",
    )
    curvature_antihermitian_tol: float = Field(
        default=1e-8, gt=0, description="Default anti-Hermitian defect allowed for F_{mu nu}"
    )
    eps_halving_tol: float = Field(
        default=0.5,
        gt=0,
        description="Default relative change of a plaquette generator when eps is halved",
    )

    rank_rel_tol: float = Field(
        default=1e-7,
        gt=0,
        description="Singular values above this fraction of the largest count toward rank",
    )
    rank_abs_tol: float = Field(
        default=1e-8, gt=0, description="Absolute singular-value floor for rank"
    )
    trace_full_u: float = Field(
        default=1e-6, gt=0, description="Generator |trace| needed for a full_u verdict"
    )
    trace_su: float = Field(
        default=1e-8, gt=0, description="Generator |trace| bound for an at_most_su verdict"
    )
    su_min_samples: int = Field(
        default=200, ge=1, description="Samples needed before at_most_su is reported"
    )
    sample_radius: float = Field(
        default=0.2, gt=0, description="Radius of the perturbation ball of the rank probe"
    )
    plaquette_scale: float = Field(
        default=0.16,
        gt=0,
        description="Plaquette side pieces are max(2, ceil(plaquette_scale / eps))",
    )
    halving_checks: int = Field(
        default=2, ge=0, description="Rank-probe samples re-evaluated at eps/2"
    )

    @field_validator("log_level", mode="before")
    @classmethod
    def parse_log_level(cls, v):
        """Normalize log level names"""
        if isinstance(v, str):
            return v.strip().upper()
        return v

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        env_prefix = "HQC_"
        case_sensitive = False


settings = Settings()
