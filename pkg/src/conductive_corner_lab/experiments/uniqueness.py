"""Far-field difference tests

Two admissible scatterers that differ in a convex corner, in the inner
polygon of a nest or in an interface constant produce different far
fields. farfield_difference measures ||u_inf_1 - u_inf_2||_{L2(S^1)} for
one incident wave.
"""

from ..config.thresholds import LabThresholds
from ..interfaces import CheckResult, failed, passed
from ..logging.solver_logger import SolverLogger
from .forward import IncidentSpec, SolverSettings, forward_far_field, incident_reference, resolve_incident


def farfield_difference(
    s1,
    s2,
    k: float,
    incident: IncidentSpec = None,
    settings: SolverSettings | None = None,
    config: LabThresholds | None = None,
    logger: SolverLogger | None = None,
) -> float:
    """||u_inf(s1) - u_inf(s2)||_{L2(S^1)}; solver errors propagate"""
    settings = settings or SolverSettings()
    incident = {"kind": "plane", "theta_d": 0.0} if incident is None else incident
    first = forward_far_field(s1, k, incident, settings, config, logger)
    second = forward_far_field(s2, k, incident, settings, config, logger)
    return first.difference_norm(second)


def distinguishable(
    s1,
    s2,
    k: float,
    incident: IncidentSpec = None,
    settings: SolverSettings | None = None,
    config: LabThresholds | None = None,
    logger: SolverLogger | None = None,
) -> CheckResult:
    """PASS when the far fields differ by more than theta_inv times the incident amplitude"""
    config = config or LabThresholds()
    incident = {"kind": "plane", "theta_d": 0.0} if incident is None else incident
    radius = max(s1.circumradius, s2.circumradius)
    reference = incident_reference(resolve_incident(incident, k, radius), radius)
    difference = farfield_difference(s1, s2, k, incident, settings, config, logger)
    level = config.theta_inv * reference
    details = {"difference": difference, "level": level, "k": k}
    if difference > level:
        return passed("farfield_difference", **details)
    return failed(
        "farfield_difference",
        f"far fields differ by {difference:.3e}, not above {level:.3e}",
        **details,
    )
