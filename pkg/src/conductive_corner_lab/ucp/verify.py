"""Induction-step verification over a tau grid

For each step ell the verifier assembles the step system on the tau grid,
checks its determinant against the closed form, names the rational
witness when it is singular, and tracks how the forced solution of
matrix x = G behaves as tau grows. For a field with a_j = b_j = 0
(j <= ell) the G-terms decay faster than tau^{-(ell+2)}, so the forced
solution tends to (0, 0); a nonzero a_{ell+1} leaves a mismatch of order
tau^{-(ell+2)} between the two sides of the identity.
"""

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..config.thresholds import LabThresholds
from ..errors import DecayFitError, DomainError
from ..geometry.angles import AngleClass, IrrationalWithin, classify_angle
from ..geometry.sector import Sector
from ..logging.sweep_logger import SweepLogger
from ..parallel import ordered_map
from ..specfun.fourier_bessel import FourierBesselField
from ..cgo.decay import AsymptoticFit, fit_decay
from .determinants import SingularAngle, det_step, singular_witness
from .systems import StepSystem, assemble_step_system

CONSISTENCY_TOL = 1e-14


@dataclass
class StepReport:
    """Verification result of one induction step"""

    ell: int
    det: complex
    det_closed: float
    condition: float
    singular: bool
    witness: SingularAngle | None
    consistent: bool
    unknowns: tuple[complex, complex]
    tau: list[float] = field(default_factory=list)
    forced_norms: list[float] = field(default_factory=list)
    lhs_norms: list[float] = field(default_factory=list)
    rhs_norms: list[float] = field(default_factory=list)
    mismatch: list[float] = field(default_factory=list)
    solve_residual: float = 0.0
    tolerance: float = 0.0
    forced_fit: AsymptoticFit | None = None
    lead_fit: AsymptoticFit | None = None
    g_fit: AsymptoticFit | None = None

    @property
    def forced_zero(self) -> bool:
        """Forced solution tends to (0, 0) with an accurate solve"""
        if self.singular or not self.consistent or self.solve_residual > self.tolerance:
            return False
        if all(n == 0 for n in self.forced_norms):
            return True
        return self.forced_fit is not None and self.forced_fit.slope > 0.5

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "det": [self.det.real, self.det.imag],
            "det_closed": self.det_closed,
            "condition": self.condition,
            "singular": self.singular,
            "witness": self.witness.to_dict() if self.witness else None,
            "consistent": self.consistent,
            "unknowns": [[z.real, z.imag] for z in self.unknowns],
            "forced_zero": self.forced_zero,
            "solve_residual": self.solve_residual,
            "tolerance": self.tolerance,
            "slopes": {
                "forced": self.forced_fit.slope if self.forced_fit else None,
                "leading": self.lead_fit.slope if self.lead_fit else None,
                "g_terms": self.g_fit.slope if self.g_fit else None,
            },
        }


@dataclass
class UcpReport:
    """Per-step verification report"""

    beta: float
    angle_class: AngleClass
    eta: complex
    gamma1: float
    tau_grid: list[float]
    steps: list[StepReport]

    @property
    def first_singular_step(self) -> int | None:
        return next((s.ell for s in self.steps if s.singular), None)

    @property
    def all_nonsingular(self) -> bool:
        return self.first_singular_step is None

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "angle_class": self.angle_class.to_dict(),
            "eta": [complex(self.eta).real, complex(self.eta).imag],
            "gamma1": self.gamma1,
            "tau_grid": self.tau_grid,
            "first_singular_step": self.first_singular_step,
            "steps": [s.to_dict() for s in self.steps],
        }

    def to_json(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path

    def to_csv(self, path: str | Path) -> Path:
        """One row per (step, tau): scaled |lhs|, |rhs|, forced-solution norm"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["ell", "tau", "abs_lhs", "abs_rhs", "forced_norm", "mismatch"])
            for step in self.steps:
                forced = step.forced_norms or [math.nan] * len(step.tau)
                for row in zip(step.tau, step.lhs_norms, step.rhs_norms, forced, step.mismatch):
                    writer.writerow([step.ell] + [repr(float(v)) for v in row])
        return path


def _safe_fit(tau, values) -> AsymptoticFit | None:
    """Decay fit, or None when the data cannot be fitted (zeros)"""
    try:
        return fit_decay(tau, values)
    except DecayFitError:
        return None


def _is_consistent(coeffs: FourierBesselField, ell: int) -> bool:
    scale = max(1.0, float(np.max(np.abs(coeffs.coeffs))))
    for j in range(min(ell, coeffs.order) + 1):
        a, b = coeffs.coefficient(j)
        # only a_0 + b_0 is meaningful at order 0
        if j == 0 and abs(a + b) <= CONSISTENCY_TOL * scale:
            continue
        if max(abs(a), abs(b)) > CONSISTENCY_TOL * scale:
            return False
    return True


def verify_step(
    sector: Sector,
    eta: complex,
    gamma1: float,
    coeffs: FourierBesselField,
    ell: int,
    tau_grid,
    config: LabThresholds,
    logger: SweepLogger | None = None,
) -> StepReport:
    """Verify a single induction step on the tau grid"""
    systems: list[StepSystem] = [
        assemble_step_system(sector, eta, ell, tau, gamma1, field=coeffs) for tau in tau_grid
    ]
    reference = systems[0]
    det = reference.det
    condition = reference.condition
    singular = abs(det) < config.det_singular
    report = StepReport(
        ell=ell,
        det=det,
        det_closed=det_step(sector.beta, ell),
        condition=condition,
        singular=singular,
        witness=singular_witness(sector.beta, ell, tol=max(1e-9, config.tol_angle)) if singular else None,
        consistent=_is_consistent(coeffs, ell),
        unknowns=coeffs.coefficient(ell + 1),
        tau=[float(t) for t in tau_grid],
        tolerance=config.forced_residual * (condition if np.isfinite(condition) else math.inf),
    )

    residuals = []
    for system in systems:
        lhs, rhs = system.normalized_lhs, system.normalized_rhs
        report.lhs_norms.append(float(np.linalg.norm(lhs)))
        report.rhs_norms.append(float(np.linalg.norm(rhs)))
        report.mismatch.append(float(np.linalg.norm(lhs - rhs)))
        if not singular:
            forced = system.forced_solution()
            report.forced_norms.append(float(np.linalg.norm(forced)))
            residuals.append(system.solve_residual(forced))
        if logger is not None:
            logger.log("ucp_step", system.tau, np.linalg.norm(system.lhs), np.linalg.norm(system.rhs), label=f"ell={ell}")
    report.solve_residual = max(residuals, default=0.0)

    tau = np.asarray(report.tau)
    scale = tau ** (ell + 2)
    if report.forced_norms and any(report.forced_norms):
        report.forced_fit = _safe_fit(tau, report.forced_norms)
    if any(report.lhs_norms):
        report.lead_fit = _safe_fit(tau, np.asarray(report.lhs_norms) / scale)
    if any(report.rhs_norms):
        report.g_fit = _safe_fit(tau, np.asarray(report.rhs_norms) / scale)
    return report


def ucp_verify(
    sector: Sector,
    eta: complex,
    gamma1: float,
    coeffs: FourierBesselField,
    tau_grid=None,
    max_step: int = 3,
    config: LabThresholds | None = None,
    require_irrational: bool = False,
    logger: SweepLogger | None = None,
    threads: int | None = None,
) -> UcpReport:
    """Verify the induction steps ell = 0..max_step.

    Args:
        sector: Corner sector
        eta: Conductive constant (nonzero)
        gamma1: kappa^2 of the local field
        coeffs: Trial Fourier-Bessel field (kappa = sqrt(gamma1))
        tau_grid: CGO amplitudes (default from config)
        max_step: Last step L
        config: LabThresholds (det_singular, forced_residual, angle classification)
        require_irrational: Reject opening angles classified as rational
        logger: Optional SweepLogger
        threads: Worker count over steps (default from CCLAB_THREADS)

    Returns:
        UcpReport; singular steps are reported with their rational witness
    """
    config = config or LabThresholds()
    if max_step < 0:
        raise DomainError(f"max_step must be >= 0, got {max_step}")
    angle_class = classify_angle(sector.beta, config.angle_denominator, config.tol_angle)
    if require_irrational and not isinstance(angle_class, IrrationalWithin):
        raise DomainError(f"opening angle {sector.beta} is classified {angle_class}")
    tau = config.tau_grid() if tau_grid is None else np.asarray(tau_grid, dtype=float)

    steps = ordered_map(
        lambda ell: verify_step(sector, eta, gamma1, coeffs, ell, tau, config, logger),
        range(max_step + 1),
        threads,
    )
    return UcpReport(
        beta=sector.beta,
        angle_class=angle_class,
        eta=eta,
        gamma1=gamma1,
        tau_grid=[float(t) for t in tau],
        steps=steps,
    )
