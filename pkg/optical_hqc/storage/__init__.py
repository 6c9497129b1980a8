"""Report storage abstraction"""

from enum import Enum
from pathlib import Path
from typing import Optional, Union

from .file_storage import FileStorage, StdoutStorage
from .memory_storage import (MemoryStorage, ReportStorage, render_body,
                             render_report)

__all__ = [
    "FileStorage",
    "MemoryStorage",
    "ReportStorage",
    "StdoutStorage",
    "StorageType",
    "create_storage",
    "render_body",
    "render_report",
]


class StorageType(str, Enum):
    """Storage type enumeration"""

    FILE = "file"
    STDOUT = "stdout"
    MEMORY = "memory"


def create_storage(
    storage_type: Union[StorageType, str] = StorageType.STDOUT,
    path: Optional[Union[str, Path]] = None,
) -> ReportStorage:
    """
    Factory function to create a report sink

    Args:
        storage_type: Type of storage (StorageType enum or string)
        path: Output file (only for file storage)

    Returns:
        ReportStorage instance

    Raises:
        ValueError: If storage_type is invalid or file storage has no path
    """
    if isinstance(storage_type, str):
        try:
            storage_type = StorageType(storage_type.lower())
        except ValueError:
            raise ValueError(
                f"Invalid storage_type: {storage_type}. "
                f"Must be one of: {[e.value for e in StorageType]}"
            )

    if storage_type == StorageType.FILE:
        if path is None:
            raise ValueError("File storage needs an output path")
        return FileStorage(path)
    elif storage_type == StorageType.STDOUT:
        return StdoutStorage()
    return MemoryStorage()
