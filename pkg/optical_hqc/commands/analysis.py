"""connection, curvature and rank-probe verbs"""

from typing import Optional

from optical_hqc.commands.errors import exit_code_on_error
from optical_hqc.models import JobConfig
from optical_hqc.services import AnalysisService
from optical_hqc.storage import ReportStorage


@exit_code_on_error("connection job")
def connection_command(
    config: JobConfig, storage: ReportStorage, workers: Optional[int] = None
) -> int:
    return AnalysisService(storage, workers).run_connection(config).exit_code


@exit_code_on_error("curvature job")
def curvature_command(
    config: JobConfig, storage: ReportStorage, workers: Optional[int] = None
) -> int:
    return AnalysisService(storage, workers).run_curvature(config).exit_code


@exit_code_on_error("rank probe")
def rank_probe_command(
    config: JobConfig, storage: ReportStorage, workers: Optional[int] = None
) -> int:
    return AnalysisService(storage, workers).run_rank_probe(config).exit_code
