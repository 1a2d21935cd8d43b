"""Boundary-vertex check for polygonal-cell structures

(c) every cell has at least one vertex whose two incident cell edges lie
on the outer boundary of Omega.
"""

from __future__ import annotations

from typing import TYPE_CHECKING
import numpy as np
from shapely.geometry import LineString

from ..interfaces import CheckResult, failed, passed

if TYPE_CHECKING:
    from ..geometry.polygon import Polygon


class BoundaryVertexChecker:
    """Check clause (c) of the cell structure"""

    def __init__(self, rel_tol: float = 1e-9):
        self.rel_tol = rel_tol

    def boundary_vertices(self, cell: Polygon, omega_boundary, scale: float) -> list[int]:
        """Vertices of cell whose two incident edges lie on the boundary of Omega"""
        band = omega_boundary.buffer(self.rel_tol * scale)
        on_boundary = [band.covers(LineString([tuple(a), tuple(b)])) for a, b in cell.edges()]
        n = len(on_boundary)
        # vertex i joins edge i-1 (incoming) and edge i (outgoing)
        return [i for i in range(n) if on_boundary[i] and on_boundary[i - 1]]

    def check(self, cells: list[Polygon], omega) -> CheckResult:
        """Check every cell

        Args:
            cells: Cell polygons
            omega: Shapely polygon of the union of the cells

        Returns:
            CheckResult with pass/fail status
        """
        boundary = omega.exterior
        scale = float(np.sqrt(omega.area))
        missing = []
        witnesses = {}
        for index, cell in enumerate(cells):
            found = self.boundary_vertices(cell, boundary, scale)
            if found:
                witnesses[index] = found
            else:
                missing.append(index)
        if missing:
            return failed(
                "boundary_vertex",
                f"cells {missing} have no vertex with both incident edges on the outer boundary",
                cells=missing,
            )
        return passed("boundary_vertex", witnesses=witnesses)
