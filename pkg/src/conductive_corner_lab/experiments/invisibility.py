"""Invisibility scans

Far-field norms over a wavenumber grid. A scatterer with a convex
irrational corner scatters every incident wave, so its norms should stay
bounded below; the scan witnesses this at desk scale and flags any k
where the norm drops under theta_inv times the incident amplitude.
"""

import numpy as np

from ..config.thresholds import LabThresholds, build_reason, invisibility_status
from ..errors import LabError
from ..interfaces import CheckStatus
from ..logging.sweep_logger import ScanLogger
from ..logging.solver_logger import SolverLogger
from ..parallel import ordered_map
from .forward import IncidentSpec, SolverSettings, forward_far_field, incident_reference, resolve_incident
from .reports import ScanPoint, ScanReport

EXPERIMENT = "invisibility_scan"


def _describe(incident: IncidentSpec) -> dict | str:
    if isinstance(incident, dict):
        return dict(incident)
    to_dict = getattr(incident, "to_dict", None)
    return to_dict() if to_dict else repr(incident)


def invisibility_scan(
    scatterer,
    k_grid,
    incident: IncidentSpec = None,
    settings: SolverSettings | None = None,
    config: LabThresholds | None = None,
    threads: int | None = None,
    scan_logger: ScanLogger | None = None,
    solver_logger: SolverLogger | None = None,
) -> ScanReport:
    """||u_inf||_{L2(S^1)} for every k of the grid.

    Args:
        scatterer: Nest, cell or disk scatterer
        k_grid: Wavenumbers (sorted on output)
        incident: Mapping {"kind": ..., params}, factory k -> IncidentField,
            or a field (single-k grids); default plane wave along x1
        settings: SolverSettings
        config: LabThresholds (theta_inv, warn_margin)
        threads: Workers over grid points (default from CCLAB_THREADS)
        scan_logger: Optional ScanLogger
        solver_logger: Optional SolverLogger

    Returns:
        ScanReport; solver failures are recorded as ERROR points
    """
    config = config or LabThresholds()
    settings = settings or SolverSettings()
    incident = {"kind": "plane", "theta_d": 0.0} if incident is None else incident
    grid = np.sort(np.asarray(k_grid, dtype=float).ravel())

    def scan_point(k: float) -> ScanPoint:
        try:
            field = resolve_incident(incident, k, scatterer.circumradius)
            reference = incident_reference(field, scatterer.circumradius)
            pattern = forward_far_field(scatterer, k, field, settings, config, solver_logger)
        except LabError as e:
            return ScanPoint(float(k), float("nan"), CheckStatus.ERROR, f"{type(e).__name__}: {e}")
        norm = pattern.l2_norm
        status = invisibility_status(norm, reference, config)
        return ScanPoint(
            float(k), norm, status, build_reason(norm, reference, status), {"reference": reference}
        )

    points = ordered_map(scan_point, grid, threads)
    if scan_logger is not None:
        for p in points:
            scan_logger.log(EXPERIMENT, p.parameter, p.metric, p.status.value, p.message)
    return ScanReport(
        experiment=EXPERIMENT,
        parameter_name="k",
        metric_name="farfield_l2",
        points=points,
        metadata={
            "scatterer_kind": scatterer.kind,
            "scatterer_hash": scatterer.content_hash(),
            "incident": _describe(incident),
            "settings": settings.to_dict(),
            "theta_inv": config.theta_inv,
        },
    )
