"""Desk-scale experiments: invisibility scans, far-field differences,
vertex admissibility and corner regularity"""

from .admissibility import (
    AdmissibilityResult,
    Verdict,
    admissibility_check,
    geometric_radii,
    polygon_admissibility,
    richardson,
    scatterer_admissibility,
)
from .forward import SolverSettings, forward_far_field, incident_reference, resolve_incident, solve_fem
from .invisibility import invisibility_scan
from .regularity import RegularityProbe, corner_regularity_probe
from .reports import INVISIBILITY_NOTE, ScanPoint, ScanReport
from .uniqueness import distinguishable, farfield_difference

__all__ = [
    "AdmissibilityResult",
    "Verdict",
    "admissibility_check",
    "geometric_radii",
    "polygon_admissibility",
    "richardson",
    "scatterer_admissibility",
    "SolverSettings",
    "forward_far_field",
    "incident_reference",
    "resolve_incident",
    "solve_fem",
    "invisibility_scan",
    "RegularityProbe",
    "corner_regularity_probe",
    "INVISIBILITY_NOTE",
    "ScanPoint",
    "ScanReport",
    "distinguishable",
    "farfield_difference",
]
