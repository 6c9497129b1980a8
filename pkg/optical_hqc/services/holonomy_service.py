"""Holonomy and convergence-sweep jobs"""

import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import List, Optional, Sequence

from optical_hqc.config import settings
from optical_hqc.engine.holonomy_engine import (LoopPath, cutoff_history,
                                                holonomy)
from optical_hqc.loop_files import describe_loop
from optical_hqc.models import (CheckFailure, CutoffEntry, EngineSnapshot,
                                HolonomyBody, JobConfig, Report, ReportMeta,
                                SegmentsEntry, SweepBody)
from optical_hqc.storage import MemoryStorage, ReportStorage
from optical_hqc.utils.converters import matrix_to_pairs, wrap_phase
from optical_hqc.utils.exceptions import ToleranceError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JobOutcome:
    """A written report and where it went"""

    report: Report
    location: str

    @property
    def failures(self) -> List[CheckFailure]:
        return self.report.body.failures

    @property
    def exit_code(self) -> int:
        return ToleranceError.exit_code if self.failures else 0


def build_meta() -> ReportMeta:
    return ReportMeta(
        tool=settings.app_name,
        tool_version=settings.app_version,
        generated_at=datetime.now(timezone.utc).isoformat(),
    )


def check(failures: List[CheckFailure], name: str, value: float, tolerance: float) -> None:
    """Record a failure when value exceeds tolerance"""
    if value > tolerance:
        logger.warning(f"Check '{name}' failed: {value:.3e} > {tolerance:.3e}")
        failures.append(CheckFailure(check=name, value=value, tolerance=tolerance))


def final_gap(table: Sequence[CutoffEntry]) -> float:
    """Gate distance between the two largest cutoffs of a sweep (0 for one cutoff)"""
    return table[-2].gate_distance if len(table) > 1 else 0.0


class HolonomyService:
    """Service for loop holonomy jobs"""

    def __init__(self, storage: Optional[ReportStorage] = None, workers: Optional[int] = None):
        """
        Initialize holonomy service

        Args:
            storage: Report sink (in-memory if None)
            workers: Threads for connection samples (settings.workers if None)
        """
        self.storage = storage or MemoryStorage()
        self.workers = workers

    def _save(self, body) -> JobOutcome:
        report = Report(meta=build_meta(), body=body)
        location = self.storage.save_report(report)
        return JobOutcome(report=report, location=location)

    def run_holonomy_job(self, config: JobConfig, loop: LoopPath) -> JobOutcome:
        """
        Compute the holonomy of a loop and write its report

        Args:
            config: Job configuration
            loop: Closed loop of the configured model

        Returns:
            JobOutcome; exit_code is 3 when a tolerance check failed

        Raises:
            HQCException: Engine errors (model mismatch, open loop, budgets)
        """
        spec = config.build_spec()
        tolerances = config.tolerances
        logger.info(
            f"Holonomy job: {spec.label}, cutoff {spec.cutoff}, {config.n_segments} segments"
        )

        result = holonomy(
            spec,
            loop,
            config.n_segments,
            refinements=config.refinements,
            antihermitian_tol=tolerances.connection_antihermitian,
            workers=self.workers,
            cutoffs=config.cutoffs or None,
        )
        cutoffs = [CutoffEntry(cutoff=c, gate_distance=d) for c, d in result.cutoff_history]

        failures: List[CheckFailure] = []
        check(failures, "unitarity", result.unitarity_defect, tolerances.unitarity)
        check(
            failures,
            "det_phase",
            abs(wrap_phase(result.det_phase - result.phase_integral)),
            tolerances.det_phase,
        )
        if cutoffs:
            check(failures, "cutoff_gap", final_gap(cutoffs), tolerances.cutoff_gap)

        body = HolonomyBody(
            config=config,
            engine=EngineSnapshot.from_settings(),
            loop=describe_loop(loop, spec),
            gate=matrix_to_pairs(result.gate),
            segments_used=result.segments_used,
            unitarity_defect=result.unitarity_defect,
            det_phase=result.det_phase,
            phase_integral=result.phase_integral,
            discretization_history=[
                SegmentsEntry(segments=n, gate_distance=d)
                for n, d in result.discretization_history
            ],
            cutoff_history=cutoffs,
            failures=failures,
        )
        outcome = self._save(body)
        logger.info(
            f"Holonomy job finished: unitarity defect {result.unitarity_defect:.3e}, "
            f"{len(failures)} failed check(s)"
        )
        return outcome

    def run_convergence_sweep(
        self, config: JobConfig, loop: LoopPath, cutoffs: Optional[Sequence[int]] = None
    ) -> JobOutcome:
        """
        Tabulate the gate distance to the largest cutoff over a cutoff sweep

        Args:
            config: Job configuration (config.cutoffs used when cutoffs is None)
            loop: Closed loop of the configured model
            cutoffs: Strictly ascending cutoffs

        Returns:
            JobOutcome; exit_code is 3 when the final gap exceeds tolerances.cutoff_gap

        Raises:
            InvalidArgumentError: If the cutoffs are not ascending
            ResourceBudgetError: If a cutoff exceeds the dimension budget
        """
        spec = config.build_spec()
        cutoffs = list(config.cutoffs if cutoffs is None else cutoffs)
        tolerances = config.tolerances
        logger.info(f"Cutoff sweep: {spec.label}, cutoffs {cutoffs}")

        table = [
            CutoffEntry(cutoff=c, gate_distance=d)
            for c, d in cutoff_history(
                spec,
                loop,
                config.n_segments,
                cutoffs,
                antihermitian_tol=tolerances.connection_antihermitian,
                workers=self.workers,
            )
        ]
        distances = [entry.gate_distance for entry in table[:-1]]
        monotone = all(b <= a for a, b in zip(distances, distances[1:]))
        if not monotone:
            logger.warning(f"Cutoff sweep is not monotone: {distances}")

        failures: List[CheckFailure] = []
        gap = final_gap(table)
        check(failures, "cutoff_gap", gap, tolerances.cutoff_gap)

        body = SweepBody(
            config=config.model_copy(update={"cutoffs": cutoffs}),
            engine=EngineSnapshot.from_settings(),
            loop=describe_loop(loop, spec),
            table=table,
            monotone=monotone,
            final_gap=gap,
            failures=failures,
        )
        return self._save(body)
