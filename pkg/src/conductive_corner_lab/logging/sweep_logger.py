"""Sweep logging

Logs tau-sweep points of the CGO moment integrals and grid points of
experiment scans, and emits sweep tables as CSV for external plotting.
"""

import csv
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Iterable

from .log_store import get_log_store


@dataclass
class SweepLogEntry:
    """Log entry for one tau-sweep point

    Attributes:
        timestamp: ISO format timestamp
        kind: Integral kind ("segment", "boundary", "area", "ucp_step")
        label: Free-form label (e.g., "ell=2 plus")
        tau: CGO amplitude
        abs_exact: |exact value|
        abs_leading: |leading-order value|
    """

    timestamp: str
    kind: str
    label: str
    tau: float
    abs_exact: float
    abs_leading: float


@dataclass
class ScanLogEntry:
    """Log entry for one experiment grid point

    Attributes:
        timestamp: ISO format timestamp
        experiment: Experiment name (e.g., "invisibility_scan")
        parameter: Grid parameter value (e.g., k)
        metric: Scalar metric at the grid point
        status: PASS / WARN / FAIL / ERROR
        message: Reason or error message
    """

    timestamp: str
    experiment: str
    parameter: float
    metric: float
    status: str
    message: str = ""


class SweepLogger:
    """Logger for tau-sweeps

    Usage:
        logger = SweepLogger()
        logger.log("boundary", tau=64.0, exact=..., leading=..., label="m=1")
    """

    LOG_TYPE = "sweep"

    def __init__(self, log_store=None):
        """Initialize SweepLogger

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

    def log(
        self,
        kind: str,
        tau: float,
        exact: complex,
        leading: complex,
        label: str = "",
    ) -> SweepLogEntry:
        """Log one sweep point

        Args:
            kind: Integral kind
            tau: CGO amplitude
            exact: Exact integral value
            leading: Leading-order value
            label: Free-form label

        Returns:
            Created log entry
        """
        entry = SweepLogEntry(
            timestamp=datetime.now().isoformat(),
            kind=kind,
            label=label,
            tau=float(tau),
            abs_exact=float(abs(exact)),
            abs_leading=float(abs(leading)),
        )
        self.log_store.write(self.LOG_TYPE, entry)
        return entry


class ScanLogger:
    """Logger for experiment grid points"""

    LOG_TYPE = "scan"

    def __init__(self, log_store=None):
        self._log_store = log_store

    @property
    def log_store(self):
        """Get log store (lazy initialization)"""
        if self._log_store is None:
            self._log_store = get_log_store()
        return self._log_store

    def log(
        self,
        experiment: str,
        parameter: float,
        metric: float,
        status: str,
        message: str = "",
    ) -> ScanLogEntry:
        entry = ScanLogEntry(
            timestamp=datetime.now().isoformat(),
            experiment=experiment,
            parameter=float(parameter),
            metric=float(metric),
            status=status,
            message=message,
        )
        self.log_store.write(self.LOG_TYPE, entry)
        return entry


def write_sweep_csv(
    path: str | Path,
    taus: Iterable[float],
    exact: Iterable[complex],
    leading: Iterable[complex],
) -> Path:
    """Write a (tau, |exact|, |leading|) table.

    Args:
        path: Output CSV path
        taus: Tau grid
        exact: Exact values on the grid
        leading: Leading-order values on the grid

    Returns:
        Path written
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["tau", "abs_exact", "abs_leading"])
        for tau, ex, le in zip(taus, exact, leading):
            writer.writerow([repr(float(tau)), repr(float(abs(ex))), repr(float(abs(le)))])
    return path
