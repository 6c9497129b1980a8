"""CLI verb handlers"""

from .analysis import (connection_command, curvature_command,
                       rank_probe_command)
from .holonomy import holonomy_command, sweep_command

COMMANDS = {
    "connection": connection_command,
    "holonomy": holonomy_command,
    "curvature": curvature_command,
    "rank-probe": rank_probe_command,
    "sweep": sweep_command,
}

__all__ = [
    "COMMANDS",
    "connection_command",
    "curvature_command",
    "holonomy_command",
    "rank_probe_command",
    "sweep_command",
]
