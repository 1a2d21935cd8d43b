"""Scan reports

A ScanReport holds one scalar metric per grid point together with its
status and message, plus metadata describing the run. Failed grid points
keep their place in the grid with metric NaN and status ERROR.
"""

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import DomainError
from ..interfaces import CheckStatus

INVISIBILITY_NOTE = (
    "Numerics can witness that a scatterer is not invisible (far-field norm bounded "
    "below); a small norm is only a candidate for invisibility and is never a certificate."
)


@dataclass
class ScanPoint:
    """One grid point of a scan

    Attributes:
        parameter: Grid value (e.g., k)
        metric: Scalar metric (NaN when the computation failed)
        status: PASS / WARN / FAIL / ERROR
        message: Reason string or error message
        details: Extra per-point values (reference amplitude, timings)
    """

    parameter: float
    metric: float
    status: CheckStatus
    message: str = ""
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "parameter": self.parameter,
            "metric": None if math.isnan(self.metric) else self.metric,
            "status": self.status.value,
            "message": self.message,
            "details": self.details,
        }


@dataclass
class ScanReport:
    """Metric per grid point with run metadata

    Attributes:
        experiment: Experiment name
        parameter_name: Name of the grid parameter
        metric_name: Name of the metric
        points: ScanPoints in grid order
        metadata: Scatterer hash, incident, settings, thresholds
    """

    experiment: str
    parameter_name: str
    metric_name: str
    points: list[ScanPoint]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        grid = [p.parameter for p in self.points]
        if any(a > b for a, b in zip(grid, grid[1:])):
            raise DomainError("scan grid must be sorted")
        if any(p.metric < 0 for p in self.points if not math.isnan(p.metric)):
            raise DomainError("scan metrics must be non-negative")

    @property
    def grid(self) -> np.ndarray:
        return np.array([p.parameter for p in self.points])

    @property
    def metrics(self) -> np.ndarray:
        return np.array([p.metric for p in self.points])

    @property
    def failures(self) -> list[ScanPoint]:
        return [p for p in self.points if p.status == CheckStatus.ERROR]

    @property
    def flagged(self) -> list[ScanPoint]:
        """Grid points below the threshold"""
        return [p for p in self.points if p.status == CheckStatus.FAIL]

    @property
    def min_metric(self) -> float:
        """Smallest metric over the successful points (NaN if none)"""
        values = self.metrics[~np.isnan(self.metrics)]
        return float(values.min()) if values.size else math.nan

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "parameter_name": self.parameter_name,
            "metric_name": self.metric_name,
            "min_metric": None if math.isnan(self.min_metric) else self.min_metric,
            "flagged": [p.parameter for p in self.flagged],
            "failures": [p.parameter for p in self.failures],
            "note": INVISIBILITY_NOTE,
            "metadata": self.metadata,
            "points": [p.to_dict() for p in self.points],
        }

    def to_csv(self, path: str | Path) -> Path:
        """Columns parameter, metric, status, message"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow([self.parameter_name, self.metric_name, "status", "message"])
            for p in self.points:
                writer.writerow([repr(float(p.parameter)), repr(float(p.metric)), p.status.value, p.message])
        return path

    def to_json(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path
