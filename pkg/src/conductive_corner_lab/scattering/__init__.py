"""Forward scattering: incident waves, the disk oracle and finite elements"""

from .disk import (
    ModalSolution,
    default_mie_order,
    far_field,
    field_eval,
    interface_traces,
    mie_solve,
    optical_theorem_residual,
    scattered_field,
    transmission_residuals,
)
from .farfield import FarFieldPattern, angle_grid, far_field_from_modes, hankel_far_constant
from .incident import (
    HerglotzWave,
    IncidentField,
    IncidentSuperposition,
    PlaneWave,
    PointSource,
    incident_field,
    incident_from_dict,
)

__all__ = [
    "ModalSolution",
    "default_mie_order",
    "far_field",
    "field_eval",
    "interface_traces",
    "mie_solve",
    "optical_theorem_residual",
    "scattered_field",
    "transmission_residuals",
    "FarFieldPattern",
    "angle_grid",
    "far_field_from_modes",
    "hankel_far_constant",
    "HerglotzWave",
    "IncidentField",
    "IncidentSuperposition",
    "PlaneWave",
    "PointSource",
    "incident_field",
    "incident_from_dict",
]
