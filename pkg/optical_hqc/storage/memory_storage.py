"""Report sinks: the storage interface and the in-memory implementation"""

import json
import logging
from abc import ABC, abstractmethod
from typing import Dict, List, Optional

from optical_hqc.models import Report

logger = logging.getLogger(__name__)


def render_report(report: Report) -> str:
    """Canonical JSON text of a report (sorted keys, two-space indent)"""
    return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


def render_body(report: Report) -> str:
    """Canonical JSON text of the report body alone (no timestamps)"""
    return json.dumps(report.body.model_dump(mode="json"), sort_keys=True, indent=2)


class ReportStorage(ABC):
    """Abstract interface for report storage"""

    @abstractmethod
    def save_report(self, report: Report) -> str:
        """Persist a report and return its location"""
        pass

    @abstractmethod
    def load_report(self, location: str) -> Optional[Report]:
        """Load a report by location (None if the sink keeps nothing)"""
        pass

    @abstractmethod
    def list_reports(self) -> List[str]:
        """Locations of reports written through this storage"""
        pass


class MemoryStorage(ReportStorage):
    """Keeps rendered reports in memory (tests and library use)"""

    def __init__(self):
        self._reports: Dict[str, str] = {}

    def save_report(self, report: Report) -> str:
        location = f"memory:{len(self._reports) + 1}"
        self._reports[location] = render_report(report)
        logger.debug(f"Stored {report.body.kind} report at {location}")
        return location

    def load_report(self, location: str) -> Optional[Report]:
        text = self._reports.get(location)
        if text is None:
            return None
        return Report.model_validate_json(text)

    def list_reports(self) -> List[str]:
        return list(self._reports.keys())
