"""Configuration: thresholds and run configurations"""

from .run_config import COMMANDS, RunConfig, RunParams
from .thresholds import LabThresholds, build_reason, invisibility_status, load_thresholds

__all__ = [
    "COMMANDS",
    "RunConfig",
    "RunParams",
    "LabThresholds",
    "load_thresholds",
    "invisibility_status",
    "build_reason",
]
