"""Connection, curvature and rank-probe jobs"""

import logging
from typing import List, Optional

from optical_hqc.engine.connection import connection_at, curvature_at
from optical_hqc.engine.holonomy_engine import holonomy_algebra_rank
from optical_hqc.models import (CheckFailure, ConnectionBody, CurvatureBody,
                                EngineSnapshot, JobConfig, RankBody, Report)
from optical_hqc.services.holonomy_service import JobOutcome, build_meta, check
from optical_hqc.storage import MemoryStorage, ReportStorage
from optical_hqc.utils.converters import matrix_to_pairs
from optical_hqc.utils.exceptions import InvalidArgumentError
from optical_hqc.utils.validators import validate_parameter_budget

logger = logging.getLogger(__name__)


class AnalysisService:
    """Service for pointwise geometry and holonomy-algebra jobs"""

    def __init__(self, storage: Optional[ReportStorage] = None, workers: Optional[int] = None):
        """
        Initialize analysis service

        Args:
            storage: Report sink (in-memory if None)
            workers: Threads for plaquette samples (settings.workers if None)
        """
        self.storage = storage or MemoryStorage()
        self.workers = workers

    def _save(self, body) -> JobOutcome:
        report = Report(meta=build_meta(), body=body)
        return JobOutcome(report=report, location=self.storage.save_report(report))

    def _point(self, config: JobConfig):
        spec = config.build_spec()
        point = spec.point(config.point)
        validate_parameter_budget(spec, point.coords, "point")
        return spec, point

    def run_connection(self, config: JobConfig) -> JobOutcome:
        """Write A_mu for every real coordinate at config.point"""
        spec, point = self._point(config)
        logger.info(f"Connection job: {spec.label}, cutoff {spec.cutoff}")
        sample = connection_at(spec, point)

        failures: List[CheckFailure] = []
        defect = sample.antihermitian_defect()
        check(
            failures,
            "connection_antihermitian",
            defect,
            config.tolerances.connection_antihermitian,
        )

        body = ConnectionBody(
            config=config,
            engine=EngineSnapshot.from_settings(),
            point=point.as_dict(spec),
            components={
                name: matrix_to_pairs(sample.components[k])
                for k, name in enumerate(sample.coordinate_names)
            },
            antihermitian_defect=defect,
            failures=failures,
        )
        return self._save(body)

    def run_curvature(self, config: JobConfig) -> JobOutcome:
        """
        Write F_{mu nu} at config.point

        Raises:
            InvalidArgumentError: If mu or nu is missing
        """
        if config.mu is None or config.nu is None:
            raise InvalidArgumentError("Curvature needs both --mu and --nu")
        spec, point = self._point(config)
        logger.info(f"Curvature job: {spec.label}, F[{config.mu}, {config.nu}]")
        sample = curvature_at(spec, point, config.mu, config.nu, step=config.step)

        failures: List[CheckFailure] = []
        defect = sample.antihermitian_defect()
        check(
            failures,
            "curvature_antihermitian",
            defect,
            config.tolerances.curvature_antihermitian,
        )

        body = CurvatureBody(
            config=config,
            engine=EngineSnapshot.from_settings(),
            point=point.as_dict(spec),
            mu=sample.mu,
            nu=sample.nu,
            matrix=matrix_to_pairs(sample.matrix),
            antihermitian_defect=defect,
            failures=failures,
        )
        return self._save(body)

    def run_rank_probe(self, config: JobConfig) -> JobOutcome:
        """
        Estimate the holonomy-algebra dimension around config.point

        Raises:
            AccuracyError: If config.eps fails the eps-halving test
        """
        spec, base = self._point(config)
        logger.info(
            f"Rank probe: {spec.label}, cutoff {spec.cutoff}, {config.samples} samples, "
            f"eps {config.eps}, seed {config.seed}"
        )
        result = holonomy_algebra_rank(
            spec,
            base,
            config.samples,
            config.eps,
            config.seed,
            eps_halving=config.tolerances.eps_halving,
            workers=self.workers,
        )
        logger.info(
            f"Rank probe finished: rank {result.rank} of {result.u_dimension}, "
            f"max |trace| {result.max_abs_trace:.3e}, verdict {result.verdict.value}"
        )
        body = RankBody(
            config=config,
            engine=EngineSnapshot.from_settings(),
            label=result.model,
            samples=result.samples,
            eps=result.eps,
            seed=result.seed,
            rank=result.rank,
            su_dimension=result.su_dimension,
            u_dimension=result.u_dimension,
            max_abs_trace=result.max_abs_trace,
            verdict=result.verdict,
            sample_rank=result.sample_rank,
            rank_history=list(result.rank_history),
            halving_deviations=list(result.halving_deviations),
            failures=[],
        )
        return self._save(body)
