"""Forward far-field computation shared by the experiments

Disk scatterers use the modal oracle unless finite elements are
requested; polygonal media are meshed and solved by finite elements.
"""

import math
from dataclasses import asdict, dataclass
from typing import Callable, Mapping, Union

import numpy as np

from ..config.thresholds import LabThresholds
from ..errors import ConfigError
from ..geometry.structures import DiskScatterer
from ..logging.solver_logger import SolverLogger
from ..scattering.disk import ModalSolution, far_field, field_eval, mie_solve
from ..scattering.farfield import FarFieldPattern
from ..scattering.fem import FemSolution, fem_solve, mesh_scatterer, near_to_far
from ..scattering.incident import IncidentField, incident_field

IncidentSpec = Union[Mapping, Callable[[float], IncidentField], IncidentField]

SOLVERS = ("auto", "mie", "fem")


@dataclass(frozen=True)
class SolverSettings:
    """Discretization settings of a forward solve

    Attributes:
        solver: "auto" (Mie for disks, FEM otherwise), "mie" or "fem"
        points_per_wavelength: Background mesh density (h = lambda / ppw)
        geometry_cells: h is also capped at R_s / geometry_cells
        h: Explicit mesh size (overrides the two rules above)
        truncation_factor: Rt = truncation_factor * R_s
        extraction_fraction: Near-to-far radius between R_s (0) and Rt (1)
        directions: Number of far-field directions
    """

    solver: str = "auto"
    points_per_wavelength: float = 20.0
    geometry_cells: float = 8.0
    h: float | None = None
    truncation_factor: float = 1.5
    extraction_fraction: float = 0.5
    directions: int = 256

    def __post_init__(self):
        if self.solver not in SOLVERS:
            raise ConfigError(f"solver must be one of {SOLVERS}, got {self.solver!r}")
        if self.points_per_wavelength < 10:
            raise ConfigError("points_per_wavelength must be >= 10")
        if self.truncation_factor <= 1.25:
            raise ConfigError("truncation_factor must exceed 1.25 so the scatterer fits in B_{0.8 Rt}")
        if not 0 < self.extraction_fraction < 1:
            raise ConfigError("extraction_fraction must lie in (0, 1)")
        if self.directions < 8:
            raise ConfigError("directions must be >= 8")

    def mesh_size(self, k: float, scatterer_radius: float) -> float:
        if self.h is not None:
            return self.h
        return min(2 * math.pi / (k * self.points_per_wavelength), scatterer_radius / self.geometry_cells)

    def to_dict(self) -> dict:
        return asdict(self)


def resolve_incident(incident: IncidentSpec, k: float, radius: float | None = None) -> IncidentField:
    """Incident field at wavenumber k from a mapping, a factory or a fixed field"""
    if isinstance(incident, IncidentField):
        if not math.isclose(incident.k, k, rel_tol=1e-12):
            raise ConfigError(f"incident field has k = {incident.k}, scan point needs k = {k}")
        field = incident
    elif callable(incident):
        field = incident(k)
    else:
        params = dict(incident)
        kind = params.pop("kind", "plane")
        field = incident_field(kind, k, **params)
    if radius is not None:
        field.check_outside(radius)
    return field


def solve_fem(scatterer, k: float, incident: IncidentField, settings: SolverSettings,
              config: LabThresholds | None = None, logger: SolverLogger | None = None) -> FemSolution:
    radius = scatterer.circumradius
    mesh = mesh_scatterer(scatterer, settings.truncation_factor * radius, settings.mesh_size(k, radius), k=k)
    return fem_solve(mesh, scatterer, k, incident, config=config, logger=logger)


def forward_far_field(
    scatterer,
    k: float,
    incident: IncidentSpec,
    settings: SolverSettings | None = None,
    config: LabThresholds | None = None,
    logger: SolverLogger | None = None,
) -> FarFieldPattern:
    """u_inf of the scatterer for one wavenumber"""
    settings = settings or SolverSettings()
    field = resolve_incident(incident, k, scatterer.circumradius)
    use_mie = settings.solver == "mie" or (settings.solver == "auto" and isinstance(scatterer, DiskScatterer))
    if use_mie:
        if not isinstance(scatterer, DiskScatterer):
            raise ConfigError("the modal solver handles disk scatterers only")
        return far_field(mie_solve(scatterer, k, field, logger=logger), settings.directions)
    solution = solve_fem(scatterer, k, field, settings, config, logger)
    mesh = solution.mesh
    radius = mesh.scatterer_radius + settings.extraction_fraction * (mesh.radius - mesh.scatterer_radius)
    return near_to_far(solution, radius, settings.directions)


def incident_reference(incident: IncidentField, radius: float, samples: int = 16) -> float:
    """RMS of |u^i| over the disk of the given radius (polar grid)"""
    r = radius * (np.arange(samples) + 0.5) / samples
    t = 2 * math.pi * np.arange(samples) / samples
    rr, tt = np.meshgrid(r, t, indexing="ij")
    points = np.column_stack([(rr * np.cos(tt)).ravel(), (rr * np.sin(tt)).ravel()])
    values = np.abs(incident.evaluate(points)) ** 2
    weights = rr.ravel()
    return float(math.sqrt(np.sum(weights * values) / np.sum(weights)))


def total_field_function(solution) -> Callable[[np.ndarray], np.ndarray]:
    """Evaluator of the total field of a FEM or modal solution (callables pass through)"""
    if isinstance(solution, FemSolution):
        return solution.total_field
    if isinstance(solution, ModalSolution):
        return lambda points: field_eval(solution, points)
    if callable(solution):
        return solution
    raise ConfigError(f"cannot evaluate a field from {type(solution).__name__}")
