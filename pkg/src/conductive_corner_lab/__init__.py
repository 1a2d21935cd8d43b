"""conductive-corner-lab: Helmholtz scattering by conductive polygonal media

Corner geometry, CGO moment asymptotics, the determinant conditions of
the corner unique-continuation argument, forward solvers (a modal oracle
for layered disks and P1 finite elements for polygonal nests and cells),
and desk-scale experiments on invisibility, uniqueness and admissibility.
"""

__version__ = "1.0.0"

from .interfaces import CheckResult, CheckStatus
from .errors import (
    ConfigError,
    DomainError,
    GeometryError,
    LabAssertionError,
    LabError,
    LabWarning,
    ResonanceError,
    SolverError,
)
from .config import LabThresholds, RunConfig, load_thresholds
from .geometry import (
    CellScatterer,
    DiskScatterer,
    LinearIndex,
    NestScatterer,
    Polygon,
    Sector,
    classify_angle,
    validate_structure,
)
from .io import list_presets, load_preset, load_scatterer
from .scattering import (
    FarFieldPattern,
    PlaneWave,
    far_field,
    field_eval,
    mie_solve,
)
from .scattering.fem import fem_solve, mesh_scatterer, near_to_far
from .experiments import (
    admissibility_check,
    corner_regularity_probe,
    farfield_difference,
    invisibility_scan,
)
from .ucp import det_gradient, det_param_recovery, det_step, ucp_verify
from .logging import LogStore, get_log_store, reset_log_store

__all__ = [
    "__version__",
    # Results and errors
    "CheckResult",
    "CheckStatus",
    "LabError",
    "LabWarning",
    "ConfigError",
    "DomainError",
    "GeometryError",
    "ResonanceError",
    "SolverError",
    "LabAssertionError",
    # Config
    "LabThresholds",
    "RunConfig",
    "load_thresholds",
    # Geometry
    "Sector",
    "Polygon",
    "LinearIndex",
    "NestScatterer",
    "CellScatterer",
    "DiskScatterer",
    "classify_angle",
    "validate_structure",
    "list_presets",
    "load_preset",
    "load_scatterer",
    # Forward solvers
    "PlaneWave",
    "FarFieldPattern",
    "mie_solve",
    "field_eval",
    "far_field",
    "mesh_scatterer",
    "fem_solve",
    "near_to_far",
    # UCP
    "det_step",
    "det_gradient",
    "det_param_recovery",
    "ucp_verify",
    # Experiments
    "invisibility_scan",
    "farfield_difference",
    "admissibility_check",
    "corner_regularity_probe",
    # Logging
    "LogStore",
    "get_log_store",
    "reset_log_store",
]
