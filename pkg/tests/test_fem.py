"""Tests for meshing, the finite-element solver and near-to-far extraction"""

import math

import numpy as np
import pytest

from conductive_corner_lab.errors import DomainError, GeometryError, LabWarning
from conductive_corner_lab.geometry import DiskScatterer, LinearIndex, NestScatterer, Polygon
from conductive_corner_lab.io import load_preset
from conductive_corner_lab.logging import SolverLogger
from conductive_corner_lab.scattering import HerglotzWave, PlaneWave, far_field, mie_solve, scattered_field
from conductive_corner_lab.scattering.fem import (
    check_resolution,
    fem_solve,
    graded_parameters,
    interface_flux_jump,
    mesh_scatterer,
    near_to_far,
)

K = 2.0
RT = 1.0
H = 0.08


@pytest.fixture(scope="module")
def disk_solution():
    scatterer = load_preset("disk")
    mesh = mesh_scatterer(scatterer, RT, H, k=K)
    return fem_solve(mesh, scatterer, K, PlaneWave(K, 0.3))


class TestGradedParameters:
    """Tests for graded_parameters"""

    def test_endpoints_and_monotone(self):
        """Parameters start at 0, end at the length and increase"""
        t = graded_parameters(1.0, 0.1)
        assert t[0] == 0.0
        assert t[-1] == pytest.approx(1.0)
        assert np.all(np.diff(t) > 0)

    def test_refined_near_ends(self):
        """Steps near the vertices are much smaller than h"""
        steps = np.diff(graded_parameters(1.0, 0.1))
        assert steps[0] < 0.1 * 0.1
        assert steps[-1] < 0.1 * 0.1
        assert np.max(steps) <= 0.1 + 1e-12


class TestMeshScatterer:
    """Tests for mesh_scatterer"""

    def test_triangle_mesh(self, irrational_triangle: Polygon):
        """Corners are nodes, regions are tagged and all triangles are positive"""
        scatterer = NestScatterer((irrational_triangle,), (LinearIndex(2.0),), (1.0,))
        mesh = mesh_scatterer(scatterer, RT, 0.1)
        np.testing.assert_allclose(
            sorted(mesh.corner_vertices.tolist()), sorted(irrational_triangle.vertices.tolist())
        )
        assert set(mesh.regions.tolist()) == {0, 1}
        assert np.all(mesh.areas > 0)
        assert set(mesh.interface_etas) == {1}

    def test_grading_at_corners(self, irrational_triangle: Polygon):
        """Triangles touching a corner are no larger than h^2"""
        scatterer = NestScatterer((irrational_triangle,), (LinearIndex(2.0),), (1.0,))
        mesh = mesh_scatterer(scatterer, RT, 0.1)
        for vertex in irrational_triangle.vertices:
            assert mesh.min_diameter_near(vertex, 1e-9) <= 0.1 * 0.1 + 1e-12

    def test_boundary_on_truncation_circle(self, single_disk):
        """Boundary nodes lie on |x| = Rt"""
        mesh = mesh_scatterer(single_disk, RT, 0.1)
        radii = np.hypot(*mesh.nodes[mesh.boundary_nodes()].T)
        np.testing.assert_allclose(radii, RT, rtol=1e-12)

    def test_interfaces_are_mesh_edges(self, nested_squares):
        """Every interface segment is an edge of the triangulation"""
        mesh = mesh_scatterer(nested_squares, RT, 0.1)
        edges = mesh.edge_set()
        for a, b in mesh.interface_edges.tolist():
            assert (min(a, b), max(a, b)) in edges
        assert set(mesh.regions.tolist()) == {0, 1, 2}
        assert mesh.interface_etas == {1: 0.5, 2: 1.0}

    def test_cell_scatterer_regions(self, two_cells):
        """Each cell is its own region with one conductive interface id"""
        mesh = mesh_scatterer(two_cells, RT, 0.1)
        assert set(mesh.regions.tolist()) == {0, 1, 2}
        assert set(mesh.interface_ids.tolist()) == {1}

    def test_export(self, tmp_path, single_disk):
        """The plain-text export starts with the format header"""
        mesh = mesh_scatterer(single_disk, RT, 0.2)
        lines = mesh.export(tmp_path / "disk.mesh").read_text().splitlines()
        assert lines[0] == "# conductive-corner-lab mesh v1"
        assert lines[2] == f"nodes {mesh.n_nodes}"

    def test_scatterer_too_large_raises(self, single_disk):
        """The scatterer must fit in B_{0.8 Rt}"""
        with pytest.raises(DomainError):
            mesh_scatterer(single_disk, 0.55, 0.1)

    def test_coarse_mesh_raises(self, single_disk):
        """h above lambda / 10 is rejected when k is given"""
        with pytest.raises(DomainError):
            mesh_scatterer(single_disk, RT, 0.5, k=5.0)
        with pytest.raises(DomainError):
            check_resolution(0.5, 5.0)
        check_resolution(0.1, 5.0)

    def test_invalid_structure_raises(self, unit_square):
        """A non-nested stack is rejected before meshing"""
        reversed_nest = NestScatterer(
            (Polygon.square(0.4), unit_square), (LinearIndex(2.0), LinearIndex(2.0)), (1.0, 1.0)
        )
        with pytest.raises(GeometryError):
            mesh_scatterer(reversed_nest, 2.0, 0.1)


@pytest.mark.slow
class TestFemSolve:
    """Tests for fem_solve and post-processing"""

    def test_matches_modal_oracle(self, disk_solution):
        """The finite-element far field agrees with the disk modal solution"""
        oracle = far_field(mie_solve(disk_solution.scatterer, K, PlaneWave(K, 0.3)), 32)
        pattern = near_to_far(disk_solution, 0.75, 32)
        assert pattern.relative_error(oracle) < 1e-2
        assert disk_solution.residual < 1e-8
        assert disk_solution.warnings == ()

    def test_flux_jump(self, disk_solution):
        """The edge flux jump follows eta u on the disk boundary"""
        jump = interface_flux_jump(disk_solution, 1)
        assert jump.length == pytest.approx(math.pi * 1.0, rel=1e-2)
        assert jump.relative_error < 1.0
        assert set(jump.to_dict()) == {"interface_id", "error", "reference", "relative_error", "length"}

    def test_unknown_interface_raises(self, disk_solution):
        """Interface ids come from the mesh"""
        with pytest.raises(DomainError):
            interface_flux_jump(disk_solution, 7)

    @pytest.mark.parametrize("radius", [0.4, 1.0, 1.5])
    def test_extraction_radius_validated(self, disk_solution, radius):
        """The extraction circle must lie between the scatterer and Rt"""
        with pytest.raises(DomainError):
            near_to_far(disk_solution, radius)

    def test_extraction_radii_agree(self, disk_solution):
        """Far fields extracted at 0.6 Rt and 0.8 Rt agree"""
        inner = near_to_far(disk_solution, 0.6 * RT, 32)
        outer = near_to_far(disk_solution, 0.8 * RT, 32)
        assert inner.relative_error(outer) < 1e-2

    def test_empty_scatterer_has_zero_field(self):
        """q = 1 and eta = 0 give u^s = 0"""
        scatterer = load_preset("empty_square")
        mesh = mesh_scatterer(scatterer, RT, 0.1)
        sol = fem_solve(mesh, scatterer, K, PlaneWave(K))
        assert sol.l2_norm == 0.0
        assert near_to_far(sol, 0.9, 16).l2_norm == 0.0

    def test_logged_solve(self, log_store, nested_squares):
        """A polygonal solve is logged with its mesh size and DtN order"""
        logger = SolverLogger(log_store)
        mesh = mesh_scatterer(nested_squares, RT, 0.1)
        sol = fem_solve(mesh, nested_squares, K, PlaneWave(K), logger=logger)
        entry = log_store.read_all("solver")[0]
        assert entry["solver"] == "fem"
        assert entry["dofs"] == mesh.n_nodes
        assert entry["dtn_modes"] == sol.dtn_modes
        assert entry["scatterer_hash"] == nested_squares.content_hash()
        assert sol.l2_norm > 0

    def test_short_dtn_warns(self, single_disk):
        """Too few DtN modes raise a LabWarning and record it"""
        mesh = mesh_scatterer(single_disk, RT, 0.1)
        with pytest.warns(LabWarning, match="DtN tail"):
            sol = fem_solve(mesh, single_disk, K, PlaneWave(K), n_modes=1)
        assert len(sol.warnings) == 1

    def test_wavenumber_checks(self, single_disk):
        """Mismatched incident k and under-resolved meshes are rejected"""
        mesh = mesh_scatterer(single_disk, RT, 0.1)
        with pytest.raises(DomainError):
            fem_solve(mesh, single_disk, K, PlaneWave(3.0))
        with pytest.raises(DomainError):
            fem_solve(mesh, single_disk, 10.0, PlaneWave(10.0))


@pytest.mark.slow
class TestFemConvergence:
    """Mesh refinement studies against the disk modal solution"""

    def test_far_field_at_twenty_points_per_wavelength(self):
        """The far field is within 1e-2 at h = lambda / 20 and improves at h / 2"""
        scatterer = load_preset("disk")
        incident = PlaneWave(K, 0.3)
        oracle = far_field(mie_solve(scatterer, K, incident), 32)
        h = 2 * math.pi / K / 20
        errors = []
        for size in (h, h / 2):
            sol = fem_solve(mesh_scatterer(scatterer, RT, size, k=K), scatterer, K, incident)
            errors.append(near_to_far(sol, 0.75, 32).relative_error(oracle))
        assert errors[0] < 1e-2
        assert errors[1] < errors[0]

    def test_bessel_mode_second_order(self):
        """A J_2 interior mode without a conductive term converges at order 2 in L2"""
        scatterer = DiskScatterer(radii=(0.5,), q_values=(2.0,), etas=(0.0,))
        nodes = 2 * math.pi * np.arange(64) / 64
        incident = HerglotzWave(K, np.exp(2j * nodes))
        exact = mie_solve(scatterer, K, incident)
        errors = []
        for h in (0.1, 0.05):
            sol = fem_solve(mesh_scatterer(scatterer, RT, h, k=K), scatterer, K, incident)
            errors.append(sol.l2_error(lambda points: scattered_field(exact, points)))
        order = math.log2(errors[0] / errors[1])
        assert 1.6 < order < 2.6
