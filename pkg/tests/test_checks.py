"""Tests for individual check modules"""

import pytest

from conductive_corner_lab.checks import (
    BoundaryVertexChecker,
    ConvexityChecker,
    NestingChecker,
    PartitionChecker,
)
from conductive_corner_lab.geometry import Polygon
from conductive_corner_lab.interfaces import CheckStatus


@pytest.fixture
def left_half() -> Polygon:
    return Polygon([[-0.5, -0.5], [0.0, -0.5], [0.0, 0.5], [-0.5, 0.5]])


@pytest.fixture
def right_half() -> Polygon:
    return Polygon([[0.0, -0.5], [0.5, -0.5], [0.5, 0.5], [0.0, 0.5]])


class TestConvexityChecker:
    """Tests for ConvexityChecker"""

    @pytest.fixture
    def checker(self) -> ConvexityChecker:
        return ConvexityChecker()

    def test_square_passes(self, checker: ConvexityChecker, unit_square: Polygon):
        """A square is strictly convex"""
        result = checker.check(unit_square, label="layer 1")
        assert result.passed is True
        assert result.status == CheckStatus.PASS
        assert result.details["label"] == "layer 1"

    def test_collinear_vertex_fails(self, checker: ConvexityChecker):
        """A vertex in the middle of an edge is not strictly convex"""
        polygon = Polygon([[0, 0], [1, 0], [2, 0], [2, 1], [0, 1]])
        result = checker.check(polygon, label="cell 2")
        assert result.passed is False
        assert result.status == CheckStatus.FAIL
        assert result.details["vertices"] == [1]
        assert "cell 2" in result.reason


class TestNestingChecker:
    """Tests for NestingChecker"""

    @pytest.fixture
    def checker(self) -> NestingChecker:
        return NestingChecker(rel_gap=1e-3)

    def test_strict_nesting_passes(self, checker: NestingChecker, unit_square: Polygon):
        """A smaller concentric square is nested with positive separation"""
        result = checker.check(unit_square, Polygon.square(0.5), unit_square.diameter)
        assert result.passed is True
        assert result.details["separation"] == pytest.approx(0.25)

    def test_not_contained_fails(self, checker: NestingChecker, unit_square: Polygon):
        """An inner layer sticking out fails"""
        result = checker.check(unit_square, Polygon.square(0.5, center=(0.5, 0.0)), 1.0)
        assert result.passed is False
        assert "not contained" in result.reason

    def test_small_gap_fails(self, checker: NestingChecker, unit_square: Polygon):
        """A gap below rel_gap * diameter fails"""
        inner = Polygon.square(0.9999)
        result = checker.check(unit_square, inner, 1.0, index=2)
        assert result.passed is False
        assert result.details == {"outer": 2, "inner": 3, "separation": pytest.approx(5e-5)}


class TestPartitionChecker:
    """Tests for PartitionChecker"""

    @pytest.fixture
    def checker(self) -> PartitionChecker:
        return PartitionChecker()

    def test_halves_are_disjoint(self, checker: PartitionChecker, left_half, right_half):
        """Cells sharing an edge do not overlap"""
        assert checker.check_disjoint([left_half, right_half]).passed is True

    def test_halves_union(self, checker: PartitionChecker, left_half, right_half):
        """The union of the halves is the unit square"""
        result = checker.check_union([left_half, right_half])
        assert result.passed is True
        assert result.details["area"] == pytest.approx(1.0)

    def test_disconnected_union_fails(self, checker: PartitionChecker, unit_square: Polygon):
        """Two separate cells do not form a single polygon"""
        far = Polygon.square(1.0, center=(3.0, 0.0))
        result = checker.check_union([unit_square, far])
        assert result.passed is False
        assert result.details["geom_type"] == "MultiPolygon"

    def test_overlap_fails(self, checker: PartitionChecker, unit_square: Polygon):
        """Overlapping cells are reported pairwise"""
        shifted = Polygon.square(1.0, center=(0.5, 0.0))
        result = checker.check_disjoint([unit_square, shifted])
        assert result.passed is False
        i, j, area = result.details["overlaps"][0]
        assert (i, j) == (0, 1)
        assert area == pytest.approx(0.5)


class TestBoundaryVertexChecker:
    """Tests for BoundaryVertexChecker"""

    def test_halves_have_boundary_vertices(self, left_half, right_half):
        """Each half has two corners of the outer square"""
        cells = [left_half, right_half]
        omega = PartitionChecker().union(cells)
        result = BoundaryVertexChecker().check(cells, omega)
        assert result.passed is True
        assert len(result.details["witnesses"][0]) == 2
        assert len(result.details["witnesses"][1]) == 2

    def test_strip_cell_fails(self):
        """The middle strip of three has no corner with two boundary edges"""
        cells = [
            Polygon([[0, 0], [1, 0], [1, 1], [0, 1]]),
            Polygon([[1, 0], [2, 0], [2, 1], [1, 1]]),
            Polygon([[2, 0], [3, 0], [3, 1], [2, 1]]),
        ]
        omega = PartitionChecker().union(cells)
        result = BoundaryVertexChecker().check(cells, omega)
        assert result.passed is False
        assert result.details["cells"] == [1]
