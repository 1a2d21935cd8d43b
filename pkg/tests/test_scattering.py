"""Tests for incident waves, far-field patterns and the disk oracle"""

import math

import numpy as np
import pytest

from conductive_corner_lab.errors import DomainError
from conductive_corner_lab.geometry import DiskScatterer, NestScatterer
from conductive_corner_lab.logging import SolverLogger
from conductive_corner_lab.scattering import (
    FarFieldPattern,
    HerglotzWave,
    IncidentSuperposition,
    PlaneWave,
    PointSource,
    angle_grid,
    far_field,
    field_eval,
    incident_field,
    incident_from_dict,
    interface_traces,
    mie_solve,
    optical_theorem_residual,
    scattered_field,
    transmission_residuals,
)
from conductive_corner_lab.scattering.fem import circle_representation
from conductive_corner_lab.specfun import cyl_bessel


def modal_sum(field, points, order=40):
    """sum_n c_n J_n(k r) e^{in theta} at points"""
    points = np.atleast_2d(points)
    r = np.hypot(points[:, 0], points[:, 1])
    theta = np.arctan2(points[:, 1], points[:, 0])
    orders, c = field.modal_coefficients(order)
    radial = cyl_bessel("J", orders[:, None], field.k * r[None, :])
    return np.sum(c[:, None] * radial * np.exp(1j * np.outer(orders, theta)), axis=0)


@pytest.fixture
def probe_points() -> np.ndarray:
    return np.array([[0.1, 0.2], [-0.4, 0.3], [0.0, -0.6], [0.5, 0.5]])


class TestIncidentFields:
    """Tests for incident waves and their modal expansions"""

    def test_plane_wave_modes(self, probe_points):
        """Jacobi-Anger coefficients reproduce the plane wave"""
        wave = PlaneWave(3.0, 0.8)
        np.testing.assert_allclose(modal_sum(wave, probe_points), wave.evaluate(probe_points), atol=1e-13)

    def test_point_source_modes(self, probe_points):
        """Graf's addition theorem holds inside |z0|"""
        source = PointSource(2.0, (2.0, 1.5))
        np.testing.assert_allclose(modal_sum(source, probe_points), source.evaluate(probe_points), rtol=1e-10)

    def test_herglotz_uniform_kernel(self, probe_points):
        """A constant kernel gives 2 pi J_0(k |x|)"""
        wave = HerglotzWave(2.0, np.ones(64))
        r = np.hypot(*probe_points.T)
        np.testing.assert_allclose(wave.evaluate(probe_points), 2 * np.pi * cyl_bessel("J", 0, 2.0 * r), atol=1e-12)
        np.testing.assert_allclose(modal_sum(wave, probe_points), wave.evaluate(probe_points), atol=1e-12)

    def test_superposition(self, probe_points):
        """Weights and sums combine linearly"""
        a, b = PlaneWave(1.5, 0.0), PlaneWave(1.5, math.pi / 3)
        combined = a + 2.0 * b
        assert isinstance(combined, IncidentSuperposition)
        expected = a.evaluate(probe_points) + 2.0 * b.evaluate(probe_points)
        np.testing.assert_allclose(combined.evaluate(probe_points), expected)
        np.testing.assert_allclose(modal_sum(combined, probe_points), expected, atol=1e-12)

    def test_superposition_needs_common_k(self):
        """Different wavenumbers cannot be superposed"""
        with pytest.raises(DomainError):
            PlaneWave(1.0) + PlaneWave(2.0)

    def test_point_source_inside_raises(self):
        """A source inside the circumdisk is rejected"""
        with pytest.raises(DomainError):
            incident_field("point_source", 1.0, z0=[0.1, 0.0], radius=0.5)

    @pytest.mark.parametrize(
        "field",
        [PlaneWave(2.0, 0.3), PointSource(1.0, (3.0, -1.0)), PlaneWave(1.0) + PointSource(1.0, (0.0, 4.0))],
        ids=["plane", "point_source", "superposition"],
    )
    def test_description_round_trip(self, field, probe_points):
        """incident_from_dict rebuilds an equivalent field"""
        rebuilt = incident_from_dict(field.to_dict())
        np.testing.assert_allclose(rebuilt.evaluate(probe_points), field.evaluate(probe_points))

    @pytest.mark.parametrize("kind, k", [("spherical", 1.0), ("plane", 0.0), ("point_source", 1.0)])
    def test_invalid_incident_raises(self, kind, k):
        """Unknown kinds, nonpositive k and missing z0 raise DomainError"""
        with pytest.raises(DomainError):
            incident_field(kind, k)


class TestFarFieldPattern:
    """Tests for FarFieldPattern"""

    def test_angle_grid(self):
        """Uniform grid of M angles"""
        grid = angle_grid(4)
        np.testing.assert_allclose(grid, [0, np.pi / 2, np.pi, 3 * np.pi / 2])
        with pytest.raises(DomainError):
            angle_grid(0)

    def test_l2_norm_of_constant(self):
        """||1||_{L2(S^1)} = sqrt(2 pi)"""
        theta = angle_grid(64)
        pattern = FarFieldPattern(theta, np.ones_like(theta), 1.0)
        assert pattern.is_uniform
        assert pattern.l2_norm == pytest.approx(math.sqrt(2 * math.pi))

    def test_fourier_coefficients(self):
        """e^{2 i theta} has a single coefficient at order 2"""
        theta = angle_grid(32)
        orders, coeffs = FarFieldPattern(theta, np.exp(2j * theta), 1.0).fourier_coefficients()
        assert coeffs[orders == 2][0] == pytest.approx(1.0)
        assert np.max(np.abs(coeffs[orders != 2])) < 1e-14

    def test_difference_norm_and_relative_error(self):
        """Difference of e^{i theta} and 0.9 e^{i theta}"""
        theta = angle_grid(64)
        a = FarFieldPattern(theta, np.exp(1j * theta), 1.0)
        b = FarFieldPattern(theta, 0.9 * np.exp(1j * theta), 1.0)
        assert a.difference_norm(b) == pytest.approx(0.1 * math.sqrt(2 * math.pi))
        assert b.relative_error(a) == pytest.approx(0.1)

    def test_mismatched_grids_raise(self):
        """Patterns on different grids cannot be compared"""
        a = FarFieldPattern.zeros(16, 1.0)
        with pytest.raises(DomainError):
            a.difference_norm(FarFieldPattern.zeros(32, 1.0))

    def test_csv_round_trip(self, tmp_path):
        """CSV output is bit-stable"""
        theta = angle_grid(8)
        pattern = FarFieldPattern(theta, np.exp(1j * theta) / 3, 2.0)
        loaded = FarFieldPattern.from_csv(pattern.to_csv(tmp_path / "ff.csv"), 2.0)
        assert np.array_equal(loaded.values, pattern.values)
        assert np.array_equal(loaded.theta, pattern.theta)


class TestMieSolve:
    """Tests for the concentric-disk oracle"""

    @pytest.mark.parametrize("name", ["single_disk", "two_layer_disk"])
    @pytest.mark.parametrize("k", [0.5, 2.0, 6.0])
    def test_transmission_residuals(self, name, k, request):
        """Every mode satisfies the conductive transmission conditions"""
        scatterer = request.getfixturevalue(name)
        sol = mie_solve(scatterer, k, PlaneWave(k, 0.2))
        assert np.max(transmission_residuals(sol)) < 1e-10

    def test_empty_disk_does_not_scatter(self, empty_disk: DiskScatterer):
        """q = 1, eta = 0 gives b_n = 0"""
        sol = mie_solve(empty_disk, 2.0, PlaneWave(2.0))
        assert np.max(np.abs(sol.scattered)) < 1e-12
        assert far_field(sol, 64).l2_norm < 1e-11

    def test_field_continuous_across_interface(self, two_layer_disk: DiskScatterer):
        """u is continuous through r = R_1 and r = R_2"""
        sol = mie_solve(two_layer_disk, 3.0, PlaneWave(3.0, 1.0))
        theta = np.linspace(0, 2 * np.pi, 9)
        for radius in two_layer_disk.radii:
            direction = np.column_stack([np.cos(theta), np.sin(theta)])
            outer = field_eval(sol, (radius + 1e-9) * direction)
            inner = field_eval(sol, (radius - 1e-9) * direction)
            np.testing.assert_allclose(outer, inner, atol=1e-7)

    def test_flux_jump_equals_eta_u(self, single_disk: DiskScatterer):
        """d_r u_in - d_r u_out = eta u on the interface"""
        sol = mie_solve(single_disk, 2.0, PlaneWave(2.0))
        traces = interface_traces(sol, 1, np.linspace(0, 2 * np.pi, 16))
        np.testing.assert_allclose(traces["u_out"], traces["u_in"], atol=1e-11)
        jump = traces["du_in"] - traces["du_out"]
        np.testing.assert_allclose(jump, single_disk.etas[0] * traces["u_out"], atol=1e-10)

    def test_scattered_field_inside_is_difference(self, single_disk: DiskScatterer):
        """Inside the disk u^s = u - u^i"""
        sol = mie_solve(single_disk, 1.0, PlaneWave(1.0))
        point = np.array([[0.1, -0.2]])
        expected = field_eval(sol, point) - sol.incident.evaluate(point)
        np.testing.assert_allclose(scattered_field(sol, point), expected)

    @pytest.mark.parametrize("k", [0.7, 2.5, 5.0])
    def test_optical_theorem_lossless(self, single_disk: DiskScatterer, k):
        """Real q and real eta conserve energy"""
        sol = mie_solve(single_disk, k, PlaneWave(k, 0.4))
        energy = far_field(sol, 256).l2_norm ** 2
        assert optical_theorem_residual(sol) < 1e-10 * max(1.0, energy)

    def test_optical_theorem_lossy(self, two_layer_disk: DiskScatterer):
        """An absorbing layer breaks the energy balance"""
        sol = mie_solve(two_layer_disk, 2.0, PlaneWave(2.0))
        assert optical_theorem_residual(sol) > 1e-6

    def test_far_field_matches_asymptotics(self, single_disk: DiskScatterer):
        """u^s(r x_hat) sqrt(r) e^{-ikr} tends to u_inf(x_hat)"""
        k, r = 2.0, 5000.0
        sol = mie_solve(single_disk, k, PlaneWave(k))
        theta = angle_grid(12)
        points = r * np.column_stack([np.cos(theta), np.sin(theta)])
        approx = scattered_field(sol, points) * math.sqrt(r) * np.exp(-1j * k * r)
        np.testing.assert_allclose(approx, far_field(sol, theta).values, rtol=1e-3, atol=1e-6)

    def test_rotation_covariance(self, single_disk: DiskScatterer):
        """Rotating the incidence rotates the far field of a disk"""
        k = 1.5
        base = far_field(mie_solve(single_disk, k, PlaneWave(k, 0.0)), 32)
        turned = far_field(mie_solve(single_disk, k, PlaneWave(k, 2 * np.pi / 32 * 5)), 32)
        np.testing.assert_allclose(np.roll(base.values, 5), turned.values, atol=1e-12)

    @pytest.mark.parametrize("a,b", [(0.4, 2.1), (1.0, 4.5), (0.0, math.pi / 3)])
    def test_far_field_reciprocity(self, two_layer_disk: DiskScatterer, a, b):
        """u_inf(-d; d') = u_inf(-d'; d), also for a lossy conductive layer"""
        k = 2.0
        forward = far_field(mie_solve(two_layer_disk, k, PlaneWave(k, b)), np.array([a + math.pi]))
        backward = far_field(mie_solve(two_layer_disk, k, PlaneWave(k, a)), np.array([b + math.pi]))
        scale = max(1.0, abs(forward.values[0]))
        assert abs(forward.values[0] - backward.values[0]) < 1e-10 * scale

    def test_circle_representation_recovers_far_field(self, two_layer_disk: DiskScatterer):
        """Green's representation on a circle reproduces the modal far field"""
        k, radius = 2.0, 1.0
        sol = mie_solve(two_layer_disk, k, PlaneWave(k, 0.3))
        m = 256
        psi = 2 * np.pi * np.arange(m) / m
        samples = scattered_field(sol, radius * np.column_stack([np.cos(psi), np.sin(psi)]))
        pattern = circle_representation(k, radius, samples, 64)
        assert pattern.relative_error(far_field(sol, 64)) < 1e-9

    def test_logger_records_solve(self, single_disk: DiskScatterer, log_store):
        """A successful solve is logged with its residual"""
        logger = SolverLogger(log_store)
        mie_solve(single_disk, 1.0, PlaneWave(1.0), logger=logger)
        entries = log_store.read_all("solver")
        assert len(entries) == 1
        assert entries[0]["solver"] == "mie"
        assert entries[0]["status"] == "ok"
        assert entries[0]["residual"] < 1e-10
        assert logger.get_failures() == []

    def test_rejects_polygonal_scatterer(self, nested_squares: NestScatterer):
        """Only disks have a modal solution"""
        with pytest.raises(DomainError):
            mie_solve(nested_squares, 1.0, PlaneWave(1.0))

    def test_rejects_wavenumber_mismatch(self, single_disk: DiskScatterer):
        """The incident wave must share k"""
        with pytest.raises(DomainError):
            mie_solve(single_disk, 1.0, PlaneWave(2.0))

    def test_threads_do_not_change_result(self, two_layer_disk: DiskScatterer):
        """Mode solves are independent of the worker count"""
        serial = mie_solve(two_layer_disk, 2.0, PlaneWave(2.0), threads=1)
        threaded = mie_solve(two_layer_disk, 2.0, PlaneWave(2.0), threads=3)
        np.testing.assert_array_equal(serial.coefficients, threaded.coefficients)
