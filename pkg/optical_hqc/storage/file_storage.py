"""File and stdout report sinks"""

import logging
import sys
from pathlib import Path
from typing import List, Optional, TextIO, Union

from optical_hqc.models import Report
from optical_hqc.storage.memory_storage import ReportStorage, render_report

logger = logging.getLogger(__name__)


class FileStorage(ReportStorage):
    """Writes every report to one JSON file path (parents are created)"""

    def __init__(self, path: Union[str, Path]):
        """
        Initialize file storage

        Args:
            path: Output file; an existing file is replaced
        """
        self.path = Path(path)
        self._written: List[str] = []

    def save_report(self, report: Report) -> str:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text(render_report(report), encoding="utf-8")
        location = str(self.path)
        if location not in self._written:
            self._written.append(location)
        logger.info(f"Report written to {location}")
        return location

    def load_report(self, location: str) -> Optional[Report]:
        path = Path(location)
        if not path.exists():
            return None
        return Report.model_validate_json(path.read_text(encoding="utf-8"))

    def list_reports(self) -> List[str]:
        return list(self._written)


class StdoutStorage(ReportStorage):
    """Prints reports to a text stream"""

    def __init__(self, stream: Optional[TextIO] = None):
        self.stream = stream
        self._count = 0

    def save_report(self, report: Report) -> str:
        stream = self.stream or sys.stdout
        stream.write(render_report(report))
        stream.flush()
        self._count += 1
        return f"stdout:{self._count}"

    def load_report(self, location: str) -> Optional[Report]:
        return None

    def list_reports(self) -> List[str]:
        return [f"stdout:{k}" for k in range(1, self._count + 1)]
