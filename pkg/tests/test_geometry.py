"""Tests for sectors, polygons, angle classification and scatterer structures"""

import math
from fractions import Fraction

import numpy as np
import pytest

from conductive_corner_lab.errors import ConfigError, DomainError, GeometryError
from conductive_corner_lab.geometry import (
    CellScatterer,
    DiskScatterer,
    IrrationalWithin,
    LinearIndex,
    NestScatterer,
    Polygon,
    Rational,
    Sector,
    classify_angle,
    convex_irrational_vertices,
    corner_at_vertex,
    corner_sectors,
    is_convex_irrational,
    is_irrational_polygon,
    max_corner_radius,
    scatterer_from_dict,
    validate_structure,
)


class TestSector:
    """Tests for Sector"""

    def test_opening_and_bisector(self):
        """beta and bisector follow from the ray angles"""
        sector = Sector(-0.3, 0.9, 2.0)
        assert sector.beta == pytest.approx(1.2)
        assert sector.bisector == pytest.approx(0.3)
        assert sector.ray_angles == (-0.3, 0.9)

    def test_symmetric_is_centered_on_axis(self):
        """symmetric() puts the bisector on the requested axis"""
        sector = Sector.symmetric(1.0, r0=0.5, axis=0.25)
        assert sector.bisector == pytest.approx(0.25)
        assert sector.beta == pytest.approx(1.0)
        assert sector.r0 == 0.5

    @pytest.mark.parametrize(
        "theta_m, theta_M, r0",
        [
            (0.0, math.pi, 1.0),  # opening not below pi
            (0.5, 0.5, 1.0),  # degenerate
            (1.0, 0.5, 1.0),  # reversed
            (0.0, 1.0, 0.0),  # no radius
            (-4.0, -3.0, 1.0),  # below -pi
        ],
    )
    def test_invalid_sector_raises(self, theta_m, theta_M, r0):
        """Out-of-range angles or radius raise GeometryError"""
        with pytest.raises(GeometryError):
            Sector(theta_m, theta_M, r0)

    def test_contains(self):
        """contains() accepts the closed sector and nothing else"""
        sector = Sector(0.0, math.pi / 2, 1.0)
        points = np.array([[0.5, 0.5], [0.0, 0.0], [1.0, 0.0], [-0.1, 0.5], [0.9, 0.9]])
        assert sector.contains(points).tolist() == [True, True, True, False, False]

    def test_ray_points_lie_on_rays(self):
        """Sampled ray points end at radius r0 on the two rays"""
        sector = Sector(0.2, 1.4, 3.0)
        lower, upper = sector.ray_points(5)
        assert np.hypot(*lower[-1]) == pytest.approx(3.0)
        assert math.atan2(upper[-1, 1], upper[-1, 0]) == pytest.approx(1.4)

    def test_with_radius_keeps_opening(self):
        """with_radius changes r0 only"""
        sector = Sector(0.0, 1.0).with_radius(0.1)
        assert sector.r0 == 0.1
        assert sector.beta == pytest.approx(1.0)


class TestPolygon:
    """Tests for Polygon"""

    def test_clockwise_input_is_reoriented(self):
        """Vertices are stored counter-clockwise"""
        clockwise = [[0, 0], [0, 1], [1, 1], [1, 0]]
        polygon = Polygon(clockwise)
        assert polygon.area == pytest.approx(1.0)

    def test_closing_vertex_is_dropped(self):
        """A repeated first vertex at the end is removed"""
        polygon = Polygon([[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]])
        assert len(polygon) == 4

    def test_square_properties(self, unit_square: Polygon):
        """Area, diameter, circumradius and angles of the unit square"""
        assert unit_square.area == pytest.approx(1.0)
        assert unit_square.diameter == pytest.approx(math.sqrt(2))
        assert unit_square.circumradius == pytest.approx(math.sqrt(2) / 2)
        np.testing.assert_allclose(unit_square.interior_angles(), np.full(4, math.pi / 2))
        assert unit_square.is_convex()

    def test_angles_sum(self, irrational_triangle: Polygon):
        """Interior angles of a triangle sum to pi"""
        assert irrational_triangle.interior_angles().sum() == pytest.approx(math.pi)

    def test_nonconvex_polygon(self):
        """An L-shape is not convex and has one reflex angle"""
        polygon = Polygon([[0, 0], [2, 0], [2, 1], [1, 1], [1, 2], [0, 2]])
        assert not polygon.is_convex()
        reflex = polygon.interior_angles() > math.pi
        assert reflex.sum() == 1

    def test_contains_is_strict(self, unit_square: Polygon):
        """Boundary points are outside the open polygon"""
        inside = unit_square.contains(np.array([[0.0, 0.0], [0.5, 0.0], [0.7, 0.0]]))
        assert inside.tolist() == [True, False, False]

    @pytest.mark.parametrize(
        "vertices",
        [
            [[0, 0], [1, 0]],
            [[0, 0], [1, 0], [2, 0]],
            [[0, 0], [1, 0], [float("nan"), 1]],
        ],
    )
    def test_invalid_polygon_raises(self, vertices):
        """Too few, collinear or non-finite vertices raise GeometryError"""
        with pytest.raises(GeometryError):
            Polygon(vertices)

    def test_regular_polygon(self):
        """Regular hexagon has angles 2pi/3"""
        hexagon = Polygon.regular(6, radius=2.0)
        np.testing.assert_allclose(hexagon.interior_angles(), np.full(6, 2 * math.pi / 3))
        assert hexagon.circumradius == pytest.approx(2.0)

    def test_shapely_area_matches(self, irrational_triangle: Polygon):
        """The shapely polygon has the same area"""
        assert irrational_triangle.shapely.area == pytest.approx(irrational_triangle.area)


class TestClassifyAngle:
    """Tests for classify_angle"""

    def test_right_angle_is_rational(self):
        """pi/2 is Rational(1, 2)"""
        assert classify_angle(math.pi / 2) == Rational(1, 2)

    def test_two_thirds_pi(self):
        """2pi/3 is Rational(2, 3)"""
        result = classify_angle(2 * math.pi / 3)
        assert isinstance(result, Rational)
        assert (result.p, result.q) == (2, 3)
        assert result.is_convex

    def test_reflex_rational(self):
        """3pi/2 is rational and not convex"""
        result = classify_angle(1.5 * math.pi)
        assert result == Rational(3, 2)
        assert not result.is_convex

    def test_irrational_multiple(self):
        """pi/sqrt(2) is irrational up to denominator 10^4"""
        result = classify_angle(math.pi / math.sqrt(2), Q=10**4)
        assert isinstance(result, IrrationalWithin)
        assert result.Q == 10**4
        assert isinstance(result.nearest, Fraction)

    def test_one_radian(self):
        """An angle of one radian is irrational"""
        assert isinstance(classify_angle(1.0, Q=10**4), IrrationalWithin)

    @pytest.mark.parametrize("omega", [0.0, -1.0, 2 * math.pi, 7.0])
    def test_out_of_range_raises(self, omega):
        """Angles outside (0, 2pi) raise DomainError"""
        with pytest.raises(DomainError):
            classify_angle(omega)

    def test_bad_denominator_raises(self):
        """Q < 2 raises DomainError"""
        with pytest.raises(DomainError):
            classify_angle(1.0, Q=1)

    def test_to_dict(self):
        """Classes serialize with their kind"""
        assert Rational(1, 2).to_dict() == {"kind": "rational", "p": 1, "q": 2}
        assert classify_angle(1.0, Q=100).to_dict()["kind"] == "irrational_within"


class TestPolygonAngles:
    """Tests for polygon-level angle predicates"""

    def test_triangle_is_irrational(self, irrational_triangle: Polygon):
        """Every corner of the preset triangle is irrational"""
        assert is_irrational_polygon(irrational_triangle, Q=10**4)
        assert convex_irrational_vertices(irrational_triangle, Q=10**4) == [0, 1, 2]
        assert is_convex_irrational(irrational_triangle, Q=10**4)

    def test_square_is_rational(self, unit_square: Polygon):
        """The square has no irrational corner"""
        assert not is_irrational_polygon(unit_square)
        assert not is_convex_irrational(unit_square)


class TestCorners:
    """Tests for corner frames"""

    def test_max_corner_radius_square(self, unit_square: Polygon):
        """The nearest non-incident edge of a square corner is one side away"""
        assert max_corner_radius(unit_square, 0) == pytest.approx(1.0)

    def test_corner_frame_maps_vertex_and_edges(self, unit_square: Polygon):
        """The local frame puts the vertex at the origin and the rays on the edges"""
        sector, motion = corner_at_vertex(unit_square, 0, 0.4)
        prev, vertex, nxt = unit_square.neighbours(0)
        assert sector.theta_m == 0.0
        assert sector.beta == pytest.approx(math.pi / 2)
        np.testing.assert_allclose(motion.apply([[0.0, 0.0]])[0], vertex)
        lower, upper = sector.ray_points(2)
        along_next = (nxt - vertex) / np.linalg.norm(nxt - vertex)
        along_prev = (prev - vertex) / np.linalg.norm(prev - vertex)
        np.testing.assert_allclose(motion.apply(lower[-1:])[0], vertex + 0.4 * along_next, atol=1e-14)
        np.testing.assert_allclose(motion.apply(upper[-1:])[0], vertex + 0.4 * along_prev, atol=1e-14)

    def test_inverse_motion(self, irrational_triangle: Polygon):
        """inverse() undoes apply()"""
        _, motion = corner_at_vertex(irrational_triangle, 2, 0.1)
        points = np.array([[0.3, -0.2], [1.0, 2.0]])
        np.testing.assert_allclose(motion.inverse(motion.apply(points)), points, atol=1e-14)

    def test_radius_too_large_raises(self, unit_square: Polygon):
        """A ball reaching a third edge is rejected"""
        with pytest.raises(GeometryError):
            corner_at_vertex(unit_square, 0, 1.0)

    def test_nonconvex_polygon_raises(self):
        """Corner frames need a convex polygon"""
        polygon = Polygon([[0, 0], [2, 0], [2, 1], [1, 1], [1, 2], [0, 2]])
        with pytest.raises(GeometryError):
            corner_at_vertex(polygon, 0, 0.1)

    def test_corner_sectors_cover_all_vertices(self, irrational_triangle: Polygon):
        """One frame per vertex with matching openings"""
        frames = corner_sectors(irrational_triangle)
        assert len(frames) == 3
        openings = [sector.beta for sector, _ in frames]
        np.testing.assert_allclose(openings, irrational_triangle.interior_angles())


class TestLinearIndex:
    """Tests for LinearIndex"""

    def test_evaluation(self):
        """q(x) = q0 + q1 x1 + q2 x2"""
        q = LinearIndex(1.0, 2.0, -1.0)
        np.testing.assert_allclose(q(np.array([[1.0, 1.0], [0.0, 2.0]])), [2.0, -1.0])

    def test_trivial_and_constant(self):
        """q == 1 is trivial, q == 2 is constant"""
        assert LinearIndex().is_trivial
        assert LinearIndex(2.0).is_constant
        assert not LinearIndex(2.0).is_trivial
        assert not LinearIndex(1.0, 0.5).is_constant

    def test_parse(self):
        """Scalars, [re, im] pairs and coefficient triples are accepted"""
        assert LinearIndex.parse(2.0) == LinearIndex(2.0)
        assert LinearIndex.parse([2.0, 0.5]) == LinearIndex(2.0 + 0.5j)
        assert LinearIndex.parse([1.0, [0.0, 1.0], 0.0]) == LinearIndex(1.0, 1j, 0.0)

    def test_max_abs_on_polygon(self, unit_square: Polygon):
        """Maximum of |q| over a polygon is reached at a vertex"""
        assert LinearIndex(1.0, 2.0).max_abs_on(unit_square) == pytest.approx(2.0)

    def test_non_finite_raises(self):
        """Non-finite coefficients raise GeometryError"""
        with pytest.raises(GeometryError):
            LinearIndex(float("inf"))


class TestScatterers:
    """Tests for scatterer structures and their descriptions"""

    def test_nest_properties(self, nested_squares: NestScatterer):
        """Outer layer, circumradius and emptiness"""
        assert nested_squares.outer == Polygon.square(1.0)
        assert nested_squares.circumradius == pytest.approx(math.sqrt(2) / 2)
        assert not nested_squares.is_empty

    def test_empty_nest(self, unit_square: Polygon):
        """q == 1 and eta == 0 is an empty scatterer"""
        nest = NestScatterer((unit_square,), (LinearIndex(),), (0.0,))
        assert nest.is_empty

    def test_nest_length_mismatch_raises(self, unit_square: Polygon):
        """One index and one eta per layer"""
        with pytest.raises(GeometryError):
            NestScatterer((unit_square,), (LinearIndex(), LinearIndex()), (0.0,))

    def test_disk_radii_must_decrease(self):
        """Radii must be strictly decreasing"""
        with pytest.raises(GeometryError):
            DiskScatterer((0.3, 0.5), (2.0, 2.0), (0.0, 0.0))

    def test_disk_indices(self, two_layer_disk: DiskScatterer):
        """Disk layers expose constant LinearIndex values"""
        assert two_layer_disk.n_layers == 2
        assert two_layer_disk.indices[1] == LinearIndex(4.0 + 0.5j)

    @pytest.mark.parametrize("name", ["nested_squares", "two_cells", "two_layer_disk"])
    def test_description_round_trip(self, name, request):
        """to_dict() feeds back into scatterer_from_dict() unchanged"""
        scatterer = request.getfixturevalue(name)
        rebuilt = scatterer_from_dict(scatterer.to_dict())
        assert rebuilt.to_dict() == scatterer.to_dict()
        assert rebuilt.content_hash() == scatterer.content_hash()

    def test_content_hash_changes_with_eta(self, single_disk: DiskScatterer):
        """Different parameters give different hashes"""
        other = DiskScatterer(single_disk.radii, single_disk.q_values, (0.6,))
        assert other.content_hash() != single_disk.content_hash()

    @pytest.mark.parametrize(
        "data",
        [
            {"kind": "hexagon"},
            {"kind": "nest"},
            {"kind": "disk", "layers": [{"q": 2.0}]},
            {"kind": "nest", "layers": [{"vertices": [[0, 0], [1, 0]]}]},
            ["not", "a", "mapping"],
        ],
    )
    def test_malformed_description_raises(self, data):
        """Malformed descriptions raise ConfigError"""
        with pytest.raises(ConfigError):
            scatterer_from_dict(data)


class TestValidateStructure:
    """Tests for validate_structure"""

    def test_valid_nest(self, nested_squares: NestScatterer):
        """Strictly nested convex squares pass"""
        assert validate_structure(nested_squares) == []

    def test_touching_layers_fail(self):
        """An inner layer sharing boundary with the outer one fails nesting"""
        outer = Polygon.square(1.0)
        inner = Polygon([[-0.5, -0.5], [0.0, -0.5], [0.0, 0.0], [-0.5, 0.0]])
        nest = NestScatterer((outer, inner), (LinearIndex(2.0), LinearIndex(3.0)), (1.0, 1.0))
        names = [r.name for r in validate_structure(nest)]
        assert names == ["nesting"]

    def test_nonconvex_layer_fails(self):
        """A reflex corner fails convexity"""
        l_shape = Polygon([[0, 0], [2, 0], [2, 1], [1, 1], [1, 2], [0, 2]])
        nest = NestScatterer((l_shape,), (LinearIndex(2.0),), (1.0,))
        results = validate_structure(nest)
        assert [r.name for r in results] == ["convexity"]
        assert results[0].details["vertices"] == [3]

    def test_valid_cells(self, two_cells: CellScatterer):
        """Two halves of a square pass every clause"""
        assert validate_structure(two_cells) == []

    def test_overlapping_cells_fail(self):
        """Overlapping cells fail the partition clause"""
        a = Polygon([[0, 0], [2, 0], [2, 1], [0, 1]])
        b = Polygon([[1, 0], [3, 0], [3, 1], [1, 1]])
        cells = CellScatterer((a, b), 1.0, (LinearIndex(2.0), LinearIndex(2.0)))
        assert "partition_overlap" in [r.name for r in validate_structure(cells)]

    def test_interior_cell_fails_boundary_vertex(self):
        """A cell with no corner on the outer boundary fails clause (c)"""
        center = Polygon([[0, -1], [1, 0], [0, 1], [-1, 0]])
        corners = [
            Polygon([[-1, -1], [0, -1], [-1, 0]]),
            Polygon([[1, -1], [1, 0], [0, -1]]),
            Polygon([[1, 1], [0, 1], [1, 0]]),
            Polygon([[-1, 1], [-1, 0], [0, 1]]),
        ]
        cells = CellScatterer((center, *corners), 1.0, tuple(LinearIndex(2.0) for _ in range(5)))
        results = validate_structure(cells)
        assert [r.name for r in results] == ["boundary_vertex"]
        assert results[0].details["cells"] == [0]

    def test_disk_has_no_clauses(self, single_disk: DiskScatterer):
        """Disk ordering is enforced at construction"""
        assert validate_structure(single_disk) == []
