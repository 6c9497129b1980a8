"""Job services between the command layer and the engine"""

from .analysis_service import AnalysisService
from .holonomy_service import HolonomyService, JobOutcome

__all__ = ["AnalysisService", "HolonomyService", "JobOutcome"]
