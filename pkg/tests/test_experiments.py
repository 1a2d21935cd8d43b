"""Tests for admissibility, regularity, invisibility scans and far-field differences"""

import json
import math

import numpy as np
import pytest

from conductive_corner_lab.config import LabThresholds
from conductive_corner_lab.errors import ConfigError, DomainError, LabWarning, SolverError
from conductive_corner_lab.experiments import (
    ScanPoint,
    ScanReport,
    SolverSettings,
    Verdict,
    admissibility_check,
    corner_regularity_probe,
    distinguishable,
    farfield_difference,
    forward_far_field,
    geometric_radii,
    incident_reference,
    invisibility_scan,
    polygon_admissibility,
    resolve_incident,
    richardson,
    scatterer_admissibility,
)
from conductive_corner_lab.geometry import DiskScatterer
from conductive_corner_lab.interfaces import CheckStatus
from conductive_corner_lab.io import load_preset
from conductive_corner_lab.logging import ScanLogger
from conductive_corner_lab.scattering import PlaneWave
from conductive_corner_lab.scattering.fem import fem_solve, mesh_scatterer

RADII = geometric_radii(0.1)


def constant(points):
    return np.ones(len(points), dtype=complex)


def first_coordinate(points):
    return points[:, 0].astype(complex)


def saddle(points):
    return (points[:, 0] * points[:, 1]).astype(complex)


class TestRichardson:
    """Tests for richardson"""

    def test_removes_low_powers(self):
        """c0 + c1 rho + c2 rho^2 + c3 rho^3 extrapolates to c0"""
        values = [2.0 + 3 * r - 5 * r**2 + 7 * r**3 for r in RADII]
        limit, change = richardson(values, 0.5)
        assert limit == pytest.approx(2.0, abs=1e-12)
        # the last-but-one level still carries 7 rho^3 / 8 at rho = 0.05
        assert change == pytest.approx(0.875 * 0.05**3, rel=1e-6)

    def test_geometric_radii(self):
        """rho0, rho0/2, rho0/4, rho0/8"""
        np.testing.assert_allclose(RADII, [0.1, 0.05, 0.025, 0.0125])


class TestAdmissibilityCheck:
    """Tests for admissibility_check"""

    def test_nonvanishing_field_is_cond1(self):
        """A constant field satisfies condition I"""
        result = admissibility_check(constant, (0.3, -0.2), RADII)
        assert result.verdict == Verdict.COND_I
        assert result.u_limit == pytest.approx(1.0)
        assert result.converged

    def test_linear_field_is_cond2(self):
        """u = x1 - v1 vanishes at v with a nonzero first partial"""
        vertex = np.array([0.5, 0.5])
        result = admissibility_check(lambda p: first_coordinate(p - vertex), vertex, RADII)
        assert result.verdict == Verdict.COND_II
        assert result.partials == ("d1",)
        assert result.u_limit < 1e-10
        assert result.grad_limit == pytest.approx(1.0, rel=1e-6)

    def test_saddle_is_inadmissible(self):
        """u = x1 x2 vanishes to second order at the origin"""
        result = admissibility_check(saddle, (0.0, 0.0), RADII)
        assert result.verdict == Verdict.INADMISSIBLE
        assert "both vanish" in result.reason

    @pytest.mark.parametrize("factor", [1e-6, 1.0, 1e6, 3j])
    def test_verdict_is_scale_invariant(self, factor):
        """Multiplying u by a constant keeps the verdict"""
        result = admissibility_check(lambda p: factor * first_coordinate(p), (0.0, 0.0), RADII)
        assert result.verdict == Verdict.COND_II

    def test_zero_field(self):
        """u = 0 is inadmissible"""
        result = admissibility_check(lambda p: np.zeros(len(p)), (0.0, 0.0), RADII)
        assert result.verdict == Verdict.INADMISSIBLE
        assert result.scale == 0

    @pytest.mark.parametrize(
        "policy, expected",
        [("cond2", Verdict.INADMISSIBLE), ("never", Verdict.COND_II), ("always", Verdict.INADMISSIBLE)],
    )
    def test_right_angle_policy_for_cond2(self, policy, expected):
        """Condition II at a right-angle vertex depends on the policy"""
        result = admissibility_check(
            first_coordinate, (0.0, 0.0), RADII, vertex_angle=math.pi / 2, right_angle_policy=policy
        )
        assert result.verdict == expected

    def test_right_angle_policy_for_cond1(self):
        """Condition I is unaffected unless the policy excludes right angles outright"""
        kwargs = {"vertex_angle": math.pi / 2}
        assert admissibility_check(constant, (0, 0), RADII, **kwargs).verdict == Verdict.COND_I
        always = admissibility_check(constant, (0, 0), RADII, right_angle_policy="always", **kwargs)
        assert always.verdict == Verdict.INADMISSIBLE

    def test_reflex_angle_blocks_cond2(self):
        """Condition II needs a convex vertex"""
        result = admissibility_check(first_coordinate, (0.0, 0.0), RADII, vertex_angle=1.5 * math.pi)
        assert result.verdict == Verdict.INADMISSIBLE

    def test_invalid_policy_raises(self):
        """Unknown policies raise ConfigError"""
        with pytest.raises(ConfigError):
            admissibility_check(constant, (0, 0), RADII, right_angle_policy="sometimes")

    @pytest.mark.parametrize("radii", [[0.1, 0.05, 0.025], [0.1, 0.05, 0.02, 0.01], [0.1, 0.2, 0.4, 0.8]])
    def test_bad_radius_grid_raises(self, radii):
        """Radii must be >= 4, decreasing and geometric"""
        with pytest.raises(DomainError):
            admissibility_check(constant, (0, 0), radii)

    def test_to_dict(self):
        """Results serialize their verdict by value"""
        data = admissibility_check(constant, (0, 0), RADII).to_dict()
        assert data["verdict"] == "CondI"
        assert len(data["u_averages"]) == 4


class TestPolygonAdmissibility:
    """Tests for polygon and scatterer sweeps"""

    def test_every_vertex_is_checked(self, unit_square):
        """One result per vertex"""
        results = polygon_admissibility(constant, unit_square)
        assert [r.verdict for r in results] == [Verdict.COND_I] * 4

    def test_square_vertices_with_vanishing_field(self, unit_square):
        """Right-angle vertices do not use condition II by default"""
        results = polygon_admissibility(lambda p: first_coordinate(p) + 0.5, unit_square)
        verdicts = [r.verdict for r in results]
        assert verdicts.count(Verdict.INADMISSIBLE) == 2
        assert verdicts.count(Verdict.COND_I) == 2

    def test_scatterer_sweep(self, nested_squares, single_disk):
        """Every vertex of every layer; disks have no vertices"""
        results = scatterer_admissibility(constant, nested_squares)
        assert [(p, v) for p, v, _ in results] == [(p, v) for p in range(2) for v in range(4)]
        assert scatterer_admissibility(constant, single_disk) == []


class TestCornerRegularityProbe:
    """Tests for corner_regularity_probe"""

    def test_linear_field_has_exponent_one(self):
        """|u(x) - u(v)| = rho for u = x1"""
        probe = corner_regularity_probe(first_coordinate, (0.0, 0.0))
        assert probe.alpha == pytest.approx(1.0, abs=1e-6)
        assert probe.r_squared == pytest.approx(1.0)
        assert probe.reliable

    def test_square_root_field(self):
        """|x|^{1/2} has exponent 1/2"""
        probe = corner_regularity_probe(lambda p: np.hypot(p[:, 0], p[:, 1]) ** 0.5, (0.0, 0.0))
        assert probe.alpha == pytest.approx(0.5, abs=1e-6)
        assert probe.constant == pytest.approx(1.0)

    def test_constant_field_is_degenerate(self):
        """Nothing to fit for a constant field"""
        with pytest.warns(LabWarning):
            probe = corner_regularity_probe(constant, (0.0, 0.0))
        assert probe.degenerate
        assert math.isnan(probe.alpha)
        assert probe.to_dict()["alpha"] is None

    def test_too_few_radii_raises(self):
        """At least three radii are needed"""
        with pytest.raises(DomainError):
            corner_regularity_probe(first_coordinate, (0.0, 0.0), rho_grid=[0.1, 0.05])

    @pytest.mark.slow
    def test_finite_element_corner(self):
        """The total field at a triangle corner is at least loosely Hoelder"""
        scatterer = load_preset("irrational_triangle")
        mesh = mesh_scatterer(scatterer, 1.2, 0.05)
        sol = fem_solve(mesh, scatterer, 2.0, PlaneWave(2.0))
        vertex = scatterer.outer.vertices[0]
        probe = corner_regularity_probe(sol, vertex)
        assert not probe.degenerate
        assert probe.alpha > 0.2
        with pytest.raises(DomainError):
            corner_regularity_probe(sol, (0.0, 0.0))


class TestForward:
    """Tests for forward helpers"""

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"solver": "bem"},
            {"points_per_wavelength": 5},
            {"truncation_factor": 1.1},
            {"extraction_fraction": 1.0},
            {"directions": 4},
        ],
    )
    def test_invalid_settings_raise(self, kwargs):
        """Out-of-range solver settings raise ConfigError"""
        with pytest.raises(ConfigError):
            SolverSettings(**kwargs)

    def test_mesh_size(self):
        """h follows the wavelength or the geometry, whichever is finer"""
        settings = SolverSettings()
        assert settings.mesh_size(1.0, 0.5) == pytest.approx(0.5 / 8)
        assert settings.mesh_size(20.0, 0.5) == pytest.approx(2 * math.pi / 400)
        assert SolverSettings(h=0.03).mesh_size(1.0, 0.5) == 0.03

    def test_resolve_incident(self):
        """Mappings, factories and fixed fields"""
        assert resolve_incident({"kind": "plane", "theta_d": 0.5}, 2.0).theta_d == 0.5
        assert resolve_incident(lambda k: PlaneWave(k, 1.0), 3.0).k == 3.0
        with pytest.raises(ConfigError):
            resolve_incident(PlaneWave(1.0), 2.0)

    def test_plane_wave_reference(self):
        """A plane wave has unit amplitude everywhere"""
        assert incident_reference(PlaneWave(2.0), 0.5) == pytest.approx(1.0)

    def test_mie_for_polygon_raises(self, nested_squares):
        """The modal solver refuses polygonal media"""
        with pytest.raises(ConfigError):
            forward_far_field(nested_squares, 1.0, {"kind": "plane"}, SolverSettings(solver="mie"))


class TestInvisibilityScan:
    """Tests for invisibility_scan"""

    def test_disk_scatters(self, single_disk, log_store):
        """A conductive disk is visible at every scanned k"""
        logger = ScanLogger(log_store)
        report = invisibility_scan(single_disk, [2.0, 0.5, 1.0], scan_logger=logger)
        assert report.grid.tolist() == [0.5, 1.0, 2.0]
        assert all(p.status == CheckStatus.PASS for p in report.points)
        assert report.min_metric > 0
        assert report.metadata["scatterer_hash"] == single_disk.content_hash()
        assert len(log_store.read_all("scan")) == 3

    def test_empty_disk_is_flagged(self, empty_disk: DiskScatterer):
        """A scatterer that scatters nothing is flagged as a candidate only"""
        report = invisibility_scan(empty_disk, [1.0, 2.0])
        assert [p.parameter for p in report.flagged] == [1.0, 2.0]
        assert all("candidate near-invisibility" in p.message for p in report.flagged)
        assert "never a certificate" in report.to_dict()["note"]

    def test_solver_failures_are_recorded(self, single_disk, mocker):
        """A failing grid point becomes an ERROR entry with NaN metric"""
        mocker.patch(
            "conductive_corner_lab.experiments.invisibility.forward_far_field",
            side_effect=SolverError("factorization failed"),
        )
        report = invisibility_scan(single_disk, [1.0, 2.0])
        assert [p.status for p in report.points] == [CheckStatus.ERROR] * 2
        assert np.all(np.isnan(report.metrics))
        assert "SolverError" in report.points[0].message
        assert math.isnan(report.min_metric)

    def test_source_inside_scatterer_is_an_error_point(self, single_disk):
        """A point source inside the circumdisk cannot be expanded"""
        report = invisibility_scan(single_disk, [1.0], incident={"kind": "point_source", "z0": [0.1, 0.0]})
        assert report.failures[0].parameter == 1.0

    def test_threads_keep_order(self, two_layer_disk):
        """Threaded scans return the same points in grid order"""
        grid = [0.5, 1.0, 1.5, 2.0]
        serial = invisibility_scan(two_layer_disk, grid, threads=1)
        threaded = invisibility_scan(two_layer_disk, grid, threads=3)
        np.testing.assert_array_equal(serial.metrics, threaded.metrics)

    def test_report_files(self, single_disk, tmp_path):
        """CSV and JSON reports carry every grid point"""
        report = invisibility_scan(single_disk, [1.0, 2.0])
        lines = report.to_csv(tmp_path / "scan.csv").read_text().splitlines()
        assert lines[0] == "k,farfield_l2,status,message"
        assert len(lines) == 3
        data = json.loads(report.to_json(tmp_path / "scan.json").read_text())
        assert data["experiment"] == "invisibility_scan"
        assert [p["parameter"] for p in data["points"]] == [1.0, 2.0]


class TestScanReport:
    """Tests for ScanReport validation"""

    def test_unsorted_grid_raises(self):
        """Grid points must be sorted"""
        points = [ScanPoint(2.0, 1.0, CheckStatus.PASS), ScanPoint(1.0, 1.0, CheckStatus.PASS)]
        with pytest.raises(DomainError):
            ScanReport("x", "k", "m", points)

    def test_negative_metric_raises(self):
        """Metrics are norms"""
        with pytest.raises(DomainError):
            ScanReport("x", "k", "m", [ScanPoint(1.0, -1.0, CheckStatus.PASS)])


class TestFarFieldDifference:
    """Tests for farfield_difference and distinguishable"""

    def test_identical_scatterers(self, single_disk):
        """The same scatterer has zero far-field difference"""
        assert farfield_difference(single_disk, single_disk, 2.0) == 0.0
        result = distinguishable(single_disk, single_disk, 2.0)
        assert result.passed is False
        assert result.status == CheckStatus.FAIL

    def test_different_conductivity(self, single_disk):
        """Changing eta changes the far field"""
        other = DiskScatterer(radii=(0.5,), q_values=(2.0,), etas=(1.5,))
        result = distinguishable(single_disk, other, 2.0)
        assert result.passed is True
        assert result.details["difference"] > result.details["level"]

    def test_difference_is_symmetric(self, single_disk, two_layer_disk):
        """||u1 - u2|| = ||u2 - u1||"""
        forward = farfield_difference(single_disk, two_layer_disk, 1.5)
        backward = farfield_difference(two_layer_disk, single_disk, 1.5)
        assert forward == pytest.approx(backward)
        assert forward > 0

    def test_difference_triangle_inequality(self, single_disk, two_layer_disk):
        """d(1, 3) <= d(1, 2) + d(2, 3) for three disks"""
        third = DiskScatterer(radii=(0.55,), q_values=(3.0,), etas=(0.2j,))
        k, slack = 1.5, 2e-10
        d12 = farfield_difference(single_disk, two_layer_disk, k)
        d23 = farfield_difference(two_layer_disk, third, k)
        d13 = farfield_difference(single_disk, third, k)
        for a, b, c in ((d13, d12, d23), (d12, d13, d23), (d23, d12, d13)):
            assert a <= b + c + slack

    def test_custom_threshold(self, single_disk):
        """A huge theta_inv makes everything indistinguishable"""
        other = DiskScatterer(radii=(0.5,), q_values=(2.0,), etas=(0.6,))
        config = LabThresholds(theta_inv=1e6)
        assert distinguishable(single_disk, other, 2.0, config=config).passed is False
