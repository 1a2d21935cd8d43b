"""Convexity check for layers and cells

Every Sigma_i of a nest or cell structure must be an open convex polygon.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from ..interfaces import CheckResult, failed, passed

if TYPE_CHECKING:
    from ..geometry.polygon import Polygon


class ConvexityChecker:
    """Check strict convexity via cross-product signs"""

    def __init__(self, tol: float = 1e-12):
        self.tol = tol

    def check(self, polygon: Polygon, label: str = "polygon") -> CheckResult:
        """Check one polygon

        Args:
            polygon: Polygon (counter-clockwise)
            label: Name used in the reason (e.g., "layer 2")

        Returns:
            CheckResult with pass/fail status
        """
        crosses = polygon.turn_crosses()
        bad = [int(i) for i in (crosses <= self.tol * polygon.diameter**2).nonzero()[0]]
        if bad:
            return failed(
                "convexity",
                f"{label} is not strictly convex at vertices {bad}",
                label=label,
                vertices=bad,
            )
        return passed("convexity", label=label)
