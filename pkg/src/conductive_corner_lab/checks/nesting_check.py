"""Nesting check for polygonal-nest structures

closure(Sigma_{i+1}) must lie in the interior of Sigma_i with positive
separation. The quantitative witness is the distance between the two
boundaries, which must be at least rel_gap * diam(Sigma_1).
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from ..interfaces import CheckResult, failed, passed

if TYPE_CHECKING:
    from ..geometry.polygon import Polygon


class NestingChecker:
    """Check strict nesting of consecutive layers"""

    def __init__(self, rel_gap: float = 1e-9):
        self.rel_gap = rel_gap

    def check(self, outer: Polygon, inner: Polygon, diameter: float, index: int = 1) -> CheckResult:
        """Check that inner is compactly contained in outer

        Args:
            outer: Sigma_i
            inner: Sigma_{i+1}
            diameter: diam(Sigma_1), scale of the separation threshold
            index: i (1-based) for reporting

        Returns:
            CheckResult with pass/fail status
        """
        label = f"layer {index + 1} in layer {index}"
        a, b = outer.shapely, inner.shapely
        if not a.contains(b):
            return failed(
                "nesting",
                f"{label}: inner layer is not contained in the outer layer",
                outer=index,
                inner=index + 1,
            )
        gap = float(a.exterior.distance(b.exterior))
        threshold = self.rel_gap * diameter
        if gap < threshold:
            return failed(
                "nesting",
                f"{label}: boundaries touch (separation {gap:.3e} < {threshold:.3e})",
                outer=index,
                inner=index + 1,
                separation=gap,
            )
        return passed("nesting", outer=index, inner=index + 1, separation=gap)
