"""Scattered-field finite-element solver

With u = u^i + u^s the scattered field satisfies, for every P1 test
function v on B_Rt,

    int grad u^s . grad v - k^2 q u^s v - sum_i eta_i int_{dSigma_i} u^s v
        - int_{|x|=Rt} (T u^s) v
    = k^2 int (q - 1) u^i v + sum_i eta_i int_{dSigma_i} u^i v,

where the interface terms come from d_nu u^- - d_nu u^+ = eta u and T is
the exterior DtN map. The incident field only enters where q != 1 or
eta != 0.
"""

import math
import time
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as sparse_linalg

from ...config.thresholds import LabThresholds
from ...errors import DomainError, LabWarning, SolverError
from ...logging.solver_logger import SolverLogger
from ..incident import IncidentField
from .assembly import (
    default_dtn_modes,
    dtn_matrix,
    dtn_tail_estimate,
    dunavant_rule,
    edge_load_vector,
    gradients,
    interface_mass_matrix,
    load_vector,
    mass_matrix,
    region_index_values,
    stiffness_matrix,
    weighted_mass_matrix,
)
from .mesh import Mesh, check_resolution


@dataclass(frozen=True, eq=False)
class FemSolution:
    """Nodal scattered field on a mesh

    Attributes:
        mesh: Mesh of B_Rt
        scatterer: Scatterer that was meshed
        k: Wavenumber
        incident: Incident field
        values: Nodal u^s
        residual: Relative algebraic residual of the solve
        dtn_modes: DtN truncation order
        tail_estimate: DtN truncation tail estimate
        warnings: Numerical warnings raised during the solve
    """

    mesh: Mesh
    scatterer: object
    k: float
    incident: IncidentField
    values: np.ndarray
    residual: float
    dtn_modes: int
    tail_estimate: float
    warnings: tuple[str, ...] = ()

    def evaluate(self, points) -> np.ndarray:
        """u^s at points by P1 interpolation"""
        return self.mesh.interpolate(self.values, points)

    def total_field(self, points) -> np.ndarray:
        return self.evaluate(points) + self.incident.evaluate(points)

    @property
    def nodal_total(self) -> np.ndarray:
        return self.values + self.incident.evaluate(self.mesh.nodes)

    @property
    def l2_norm(self) -> float:
        """||u^s||_{L2(B_Rt)} of the P1 field"""
        return _l2(self.mesh, self.values)

    @property
    def incident_l2_norm(self) -> float:
        return _l2(self.mesh, self.incident.evaluate(self.mesh.nodes))

    def l2_error(self, exact) -> float:
        """||u^s - exact||_{L2(B_Rt)} with the 6-point rule on every triangle

        Args:
            exact: Callable mapping (n, 2) points to the reference u^s
        """
        bary, weights = dunavant_rule()
        p = self.mesh.nodes[self.mesh.triangles]
        points = np.einsum("qi,mik->mqk", bary, p)
        uh = np.einsum("qi,mi->mq", bary, self.values[self.mesh.triangles])
        ref = np.asarray(exact(points.reshape(-1, 2)), dtype=complex).reshape(uh.shape)
        per_triangle = np.abs(uh - ref) ** 2 @ weights
        return float(math.sqrt(np.sum(self.mesh.areas * per_triangle)))

    def to_dict(self) -> dict:
        return {
            "solver": "fem",
            "k": self.k,
            "scatterer_hash": self.scatterer.content_hash(),
            "incident": self.incident.to_dict(),
            "mesh": self.mesh.to_dict(),
            "residual": self.residual,
            "dtn_modes": self.dtn_modes,
            "tail_estimate": self.tail_estimate,
            "l2_norm": self.l2_norm,
            "warnings": list(self.warnings),
        }


def _l2(mesh: Mesh, values: np.ndarray) -> float:
    mass = mass_matrix(mesh)
    return float(math.sqrt(max(0.0, np.real(np.vdot(values, mass @ values)))))


def assemble_system(mesh: Mesh, k: float, incident: IncidentField, n_modes: int) -> tuple[sparse.csr_matrix, np.ndarray]:
    """System matrix and load vector of the scattered-field weak form"""
    q_values = region_index_values(mesh)
    matrix = stiffness_matrix(mesh) - k * k * weighted_mass_matrix(mesh, q_values) - interface_mass_matrix(mesh)
    dtn, _ = dtn_matrix(mesh, k, n_modes)
    matrix = (matrix - dtn).tocsr()

    nontrivial = [r for r, q in mesh.region_indices.items() if not q.is_trivial]
    triangles = np.nonzero(np.isin(mesh.regions, nontrivial))[0]

    def contrast_source(points, tri):
        q = np.ones(points.shape[0], dtype=complex)
        regions = mesh.regions[tri]
        for region in np.unique(regions):
            mask = regions == region
            q[mask] = mesh.region_indices[int(region)](points[mask])
        return k * k * (q - 1.0) * incident.evaluate(points)

    rhs = load_vector(mesh, contrast_source, triangles)
    if any(eta != 0 for eta in mesh.interface_etas.values()):
        rhs += edge_load_vector(mesh, incident.evaluate)
    return matrix, rhs


def fem_solve(
    mesh: Mesh,
    scatterer,
    k: float,
    incident: IncidentField,
    config: LabThresholds | None = None,
    n_modes: int | None = None,
    logger: SolverLogger | None = None,
) -> FemSolution:
    """Solve for u^s on a mesh of B_Rt.

    Args:
        mesh: Mesh from mesh_scatterer for this scatterer
        scatterer: Scatterer (used for hashing and reports)
        k: Wavenumber
        incident: Incident field with the same k
        config: Thresholds (DtN tail tolerance, extra DtN modes)
        n_modes: DtN truncation order (default k Rt + dtn_extra_modes)
        logger: Optional SolverLogger

    Returns:
        FemSolution

    Raises:
        SolverError: Singular or failed factorization
    """
    config = config or LabThresholds()
    if not k > 0:
        raise DomainError(f"wavenumber must be positive, got {k}")
    if not math.isclose(incident.k, k, rel_tol=1e-12):
        raise DomainError(f"incident wavenumber {incident.k} differs from k = {k}")
    check_resolution(mesh.h, k)
    incident.check_outside(mesh.scatterer_radius)
    n_modes = default_dtn_modes(k, mesh.radius, config.dtn_extra_modes) if n_modes is None else int(n_modes)

    started = time.perf_counter()
    notes: list[str] = []
    tail = dtn_tail_estimate(k, mesh.radius, mesh.scatterer_radius, n_modes)
    if tail > config.dtn_tail:
        message = f"DtN tail estimate {tail:.2e} exceeds {config.dtn_tail:.0e} with {n_modes} modes"
        warnings.warn(message, LabWarning, stacklevel=2)
        notes.append(message)

    matrix, rhs = assemble_system(mesh, k, incident, n_modes)
    try:
        if np.any(rhs):
            values = sparse_linalg.splu(matrix.tocsc()).solve(rhs)
        else:
            values = np.zeros(mesh.n_nodes, dtype=complex)
    except RuntimeError as e:
        _log_failure(logger, scatterer, k, incident, mesh, n_modes, tail, started, str(e))
        raise SolverError(f"finite-element system is singular at k={k}: {e}") from e
    if not np.all(np.isfinite(values)):
        _log_failure(logger, scatterer, k, incident, mesh, n_modes, tail, started, "non-finite solution")
        raise SolverError(f"finite-element solve produced non-finite values at k={k}")

    scale = float(np.linalg.norm(rhs))
    residual = float(np.linalg.norm(matrix @ values - rhs) / scale) if scale > 0 else 0.0
    solution = FemSolution(
        mesh=mesh,
        scatterer=scatterer,
        k=float(k),
        incident=incident,
        values=values,
        residual=residual,
        dtn_modes=n_modes,
        tail_estimate=tail,
        warnings=tuple(notes),
    )
    if logger is not None:
        logger.log(
            "fem",
            scatterer.content_hash(),
            k,
            incident=incident.to_dict(),
            dofs=mesh.n_nodes,
            residual=residual,
            dtn_modes=n_modes,
            tail_estimate=tail,
            elapsed_ms=1000 * (time.perf_counter() - started),
        )
    return solution


def _log_failure(logger, scatterer, k, incident, mesh, n_modes, tail, started, message) -> None:
    if logger is None:
        return
    logger.log(
        "fem",
        scatterer.content_hash(),
        k,
        incident=incident.to_dict(),
        dofs=mesh.n_nodes,
        dtn_modes=n_modes,
        tail_estimate=tail,
        elapsed_ms=1000 * (time.perf_counter() - started),
        status="failed",
        message=message,
    )


@dataclass(frozen=True)
class FluxJump:
    """Post-processed conductive flux jump on one interface

    Attributes:
        interface_id: Interface id
        error: || jump - eta u ||_{L2(interface)}
        reference: || eta u ||_{L2(interface)}
        length: Interface length
    """

    interface_id: int
    error: float
    reference: float
    length: float

    @property
    def relative_error(self) -> float:
        return self.error / self.reference if self.reference > 0 else self.error

    def to_dict(self) -> dict:
        return {
            "interface_id": self.interface_id,
            "error": self.error,
            "reference": self.reference,
            "relative_error": self.relative_error,
            "length": self.length,
        }


def _edge_triangles(mesh: Mesh) -> dict[tuple[int, int], list[int]]:
    adjacency: dict[tuple[int, int], list[int]] = {}
    for m, tri in enumerate(mesh.triangles.tolist()):
        for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
            adjacency.setdefault((min(a, b), max(a, b)), []).append(m)
    return adjacency


def interface_flux_jump(sol: FemSolution, interface_id: int) -> FluxJump:
    """Compare the jump of the normal flux with eta u on an interface.

    The P1 gradient is constant per triangle; the jump on an edge is the
    sum of the outward normal derivatives from its two triangles, which
    the conductive condition equates with eta u. The incident field is
    smooth and drops out of the jump.
    """
    mesh = sol.mesh
    if interface_id not in mesh.interface_etas:
        raise DomainError(f"unknown interface id {interface_id}")
    eta = mesh.interface_etas[interface_id]
    grads, _ = gradients(mesh)
    field_grads = np.einsum("mik,mi->mk", grads, sol.values[mesh.triangles])
    adjacency = _edge_triangles(mesh)
    centroids = mesh.centroids
    total = sol.nodal_total

    error = reference = length = 0.0
    for a, b in mesh.interface_edges[mesh.interface_ids == interface_id].tolist():
        owners = adjacency.get((min(a, b), max(a, b)), [])
        if len(owners) != 2:
            raise SolverError(f"interface edge ({a}, {b}) does not separate two triangles")
        tangent = mesh.nodes[b] - mesh.nodes[a]
        edge_length = float(np.hypot(*tangent))
        normal = np.array([tangent[1], -tangent[0]]) / edge_length
        if np.dot(centroids[owners[0]] - mesh.nodes[a], normal) > 0:
            normal = -normal
        # normal points out of owners[0]
        jump = (field_grads[owners[0]] - field_grads[owners[1]]) @ normal
        target = eta * 0.5 * (total[a] + total[b])
        error += edge_length * abs(jump - target) ** 2
        reference += edge_length * abs(target) ** 2
        length += edge_length
    return FluxJump(interface_id, math.sqrt(error), math.sqrt(reference), length)
