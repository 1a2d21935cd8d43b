"""Logging module for conductive-corner-lab

Provides structured logging for:
- Forward solves (Mie oracle and finite elements)
- Tau-sweeps of CGO moment integrals
- Experiment scan points
"""

from .log_store import LogStore, get_log_store, reset_log_store
from .solver_logger import SolverLogEntry, SolverLogger
from .sweep_logger import (
    ScanLogEntry,
    ScanLogger,
    SweepLogEntry,
    SweepLogger,
    write_sweep_csv,
)

__all__ = [
    "LogStore",
    "get_log_store",
    "reset_log_store",
    "SolverLogger",
    "SolverLogEntry",
    "SweepLogger",
    "SweepLogEntry",
    "ScanLogger",
    "ScanLogEntry",
    "write_sweep_csv",
]
