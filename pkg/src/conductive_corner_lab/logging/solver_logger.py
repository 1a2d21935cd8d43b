"""Forward-solver event logging

Records one entry per forward solve (Mie oracle or finite elements):
- solver kind, scatterer hash, wavenumber, incident description
- system size and weak-form residual
- DtN modes and tail estimate (FEM only)
- wall time and status (ok / failed)
"""

from dataclasses import dataclass, field
from datetime import datetime

from .log_store import get_log_store


@dataclass
class SolverLogEntry:
    """Log entry for a forward solve

    Attributes:
        timestamp: ISO format timestamp
        solver: "mie" or "fem"
        scatterer_hash: sha256 of the canonical scatterer description
        k: Wavenumber
        incident: Incident field description
        dofs: Number of unknowns (modes for Mie, nodes for FEM)
        residual: Relative residual of the solved system
        dtn_modes: Number of DtN Fourier modes (FEM)
        tail_estimate: DtN truncation tail estimate (FEM)
        elapsed_ms: Wall time in milliseconds
        status: "ok" or "failed"
        message: Error message when failed
    """

    timestamp: str
    solver: str
    scatterer_hash: str
    k: float
    incident: dict = field(default_factory=dict)
    dofs: int = 0
    residual: float = 0.0
    dtn_modes: int = 0
    tail_estimate: float = 0.0
    elapsed_ms: float = 0.0
    status: str = "ok"
    message: str = ""


class SolverLogger:
    """Logger for forward-solve events

    Usage:
        logger = SolverLogger(LogStore(out_dir))
        logger.log(solver="fem", scatterer_hash=h, k=2.0, dofs=5120, ...)
    """

    LOG_TYPE = "solver"

    def __init__(self, log_store=None):
        """Initialize SolverLogger

        Args:
            log_store: LogStore instance (uses global if not provided)
        """
        self._log_store = log_store

    @property
    def log_store(self):
        """Get log store (lazy initialization)"""
        if self._log_store is None:
            self._log_store = get_log_store()
        return self._log_store

    def log(self, solver: str, scatterer_hash: str, k: float, **fields) -> SolverLogEntry:
        """Log a forward solve

        Args:
            solver: "mie" or "fem"
            scatterer_hash: Scatterer content hash
            k: Wavenumber
            **fields: Remaining SolverLogEntry fields

        Returns:
            Created log entry
        """
        entry = SolverLogEntry(
            timestamp=datetime.now().isoformat(),
            solver=solver,
            scatterer_hash=scatterer_hash,
            k=float(k),
            **fields,
        )
        self.log_store.write(self.LOG_TYPE, entry)
        return entry

    def get_failures(self) -> list[dict]:
        """Get all failed solves in the current session"""
        return [e for e in self.log_store.read_all(self.LOG_TYPE) if e.get("status") != "ok"]
