"""Partition checks for polygonal-cell structures

(a) cells are pairwise interior-disjoint,
(b) the union of their closures is a simply connected polygon Omega.
"""

from __future__ import annotations

from itertools import combinations
from typing import TYPE_CHECKING

from shapely.geometry import Polygon as ShapelyPolygon
from shapely.ops import unary_union

from ..interfaces import CheckResult, failed, passed

if TYPE_CHECKING:
    from ..geometry.polygon import Polygon


class PartitionChecker:
    """Check that cells tile Omega without overlaps"""

    def __init__(self, rel_area_tol: float = 1e-9):
        self.rel_area_tol = rel_area_tol

    def check_disjoint(self, cells: list[Polygon]) -> CheckResult:
        """Pairwise intersections must have zero area

        Args:
            cells: Cell polygons

        Returns:
            CheckResult with pass/fail status
        """
        overlaps = []
        for (i, a), (j, b) in combinations(enumerate(cells), 2):
            area = a.shapely.intersection(b.shapely).area
            if area > self.rel_area_tol * min(a.area, b.area):
                overlaps.append([i, j, float(area)])
        if overlaps:
            return failed(
                "partition_overlap",
                f"cells overlap: {[(i, j) for i, j, _ in overlaps]}",
                overlaps=overlaps,
            )
        return passed("partition_overlap")

    def union(self, cells: list[Polygon]):
        """Union of the closed cells (a shapely geometry)"""
        return unary_union([c.shapely for c in cells])

    def check_union(self, cells: list[Polygon]) -> CheckResult:
        """The union must be one polygon without holes whose area is the sum of cell areas

        Args:
            cells: Cell polygons

        Returns:
            CheckResult with pass/fail status
        """
        omega = self.union(cells)
        if not isinstance(omega, ShapelyPolygon):
            return failed(
                "partition_union",
                f"union of cells is not a single polygon ({omega.geom_type})",
                geom_type=omega.geom_type,
            )
        if len(omega.interiors) > 0:
            return failed(
                "partition_union",
                f"union of cells has {len(omega.interiors)} holes",
                holes=len(omega.interiors),
            )
        total = sum(c.area for c in cells)
        if abs(omega.area - total) > self.rel_area_tol * total:
            return failed(
                "partition_union",
                f"union area {omega.area:.6g} differs from the cell area sum {total:.6g}",
                union_area=float(omega.area),
                cell_area=float(total),
            )
        return passed("partition_union", area=float(omega.area))
