"""holonomy and sweep verbs"""

import logging
from typing import Optional

from optical_hqc.commands.errors import exit_code_on_error
from optical_hqc.engine.holonomy_engine import LoopPath
from optical_hqc.loop_files import parse_loop_file
from optical_hqc.models import JobConfig
from optical_hqc.services import HolonomyService
from optical_hqc.storage import ReportStorage
from optical_hqc.utils.exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)


def _load_loop(config: JobConfig) -> LoopPath:
    if config.loop is None:
        raise InvalidArgumentError("This verb needs --loop <file>")
    return parse_loop_file(config.loop, config.build_spec())


@exit_code_on_error("holonomy job")
def holonomy_command(
    config: JobConfig, storage: ReportStorage, workers: Optional[int] = None
) -> int:
    """Gate of the loop in config.loop"""
    loop = _load_loop(config)
    outcome = HolonomyService(storage, workers).run_holonomy_job(config, loop)
    return outcome.exit_code


@exit_code_on_error("cutoff sweep")
def sweep_command(
    config: JobConfig, storage: ReportStorage, workers: Optional[int] = None
) -> int:
    """Cutoff convergence table of the loop in config.loop"""
    if not config.cutoffs:
        raise InvalidArgumentError("sweep needs --cutoffs")
    loop = _load_loop(config)
    outcome = HolonomyService(storage, workers).run_convergence_sweep(config, loop)
    return outcome.exit_code
