"""Induction-step linear systems

On the corner rays, the step-(ell+1) identity reads

    eta * int_{Gamma} v e^{rho . x} dsigma = sum of G-terms,

and once a_j = b_j = 0 for j <= ell the left side starts at order
tau^{-(ell+2)} with the coefficients (a_{ell+1}, b_{ell+1}). Using both
perpendicular choices gives a 2x2 system whose row-normalized matrix is
step_matrix(theta_m, theta_M, ell). The G-terms are modelled by the part
of the boundary integral beyond the leading order:
G = -eta * int (v - v_lead) e^{rho . x} dsigma.

StepSystem.matrix is the closed form step_matrix scaled per row; the CGO
moments enter through lhs and rhs. moment_step_matrix assembles the same
matrix column by column from boundary_terms of the unit modes
e^{+-i(ell+1) theta} J_{ell+1}.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..geometry.sector import Sector
from ..specfun.fourier_bessel import FourierBesselField
from ..specfun.gamma import gamma_function
from ..cgo.moments import segment_moment
from ..cgo.params import CGOParams, PerpChoice, ray_phase_rate
from .determinants import step_matrix

SERIES_TOL = 1e-17
MAX_SERIES_TERMS = 200


def bessel_ray_moment(n: int, kappa: float, mu: complex, r0: float, skip_leading: bool = False) -> complex:
    """int_0^r0 J_n(kappa r) e^{-mu r} dr from the power series of J_n.

    Each power r^{2p+n} is integrated exactly by segment_moment. With
    skip_leading the p = 0 term (kappa r/2)^n/n! is left out.
    """
    half = 0.5 * kappa
    coefficient = half**n / math.factorial(n)
    total = 0j
    for p in range(MAX_SERIES_TERMS):
        if p > 0:
            coefficient *= -(half * half) / (p * (n + p))
        if p == 0 and skip_leading:
            continue
        term = coefficient * segment_moment(2 * p + n, mu, r0).exact
        total += term
        if p > 0 and abs(term) <= SERIES_TOL * max(abs(total), 1e-300):
            break
    return total


def step_prefactor(eta: complex, ell: int, gamma1: float) -> complex:
    """eta Gamma(ell+2) (sqrt(gamma1)/2)^{ell+1} / (ell+1)!"""
    kappa = math.sqrt(gamma1)
    return eta * gamma_function(ell + 2) * (0.5 * kappa) ** (ell + 1) / math.factorial(ell + 1)


def _row_phase(params: CGOParams, ell: int) -> complex:
    return np.exp(1j * params.perp_choice.sign * (ell + 2) * params.phi)


def boundary_terms(
    field: FourierBesselField,
    sector: Sector,
    params: CGOParams,
    ell: int,
    eta: complex,
) -> tuple[complex, complex]:
    """(eta int v_lead e^{rho.x}, G) over both rays for one phase.

    v_lead is the order-(ell+1) part of v with J_{ell+1} replaced by its
    leading power; G = -eta int (v - v_lead) e^{rho.x}.
    """
    kappa = field.kappa
    lead = 0j
    rest = 0j
    for theta in sector.ray_angles:
        mu = ray_phase_rate(params, theta)
        for n in range(field.order + 1):
            a, b = field.coefficient(n)
            angular = a * np.exp(1j * n * theta) + b * np.exp(-1j * n * theta)
            if angular == 0:
                continue
            if n == ell + 1:
                lead += angular * (0.5 * kappa) ** n / math.factorial(n) * segment_moment(n, mu, sector.r0).exact
                rest += angular * bessel_ray_moment(n, kappa, mu, sector.r0, skip_leading=True)
            else:
                rest += angular * bessel_ray_moment(n, kappa, mu, sector.r0)
    return eta * lead, -eta * rest


@dataclass(frozen=True, eq=False)
class StepSystem:
    """Linear system of induction step ell

    Attributes:
        ell: Step index; unknowns are a_{ell+1}, b_{ell+1}
        matrix: tau^{ell+2}-scaled leading coefficients (PLUS row, MINUS row)
        rhs: tau^{ell+2}-scaled G-terms of the supplied field
        beta: Opening angle
        phi: CGO direction angle
        tau: CGO amplitude
        prefactor: eta Gamma(ell+2) (sqrt(gamma1)/2)^{ell+1} / (ell+1)!
        lhs: tau^{ell+2}-scaled leading boundary integrals of the field
    """

    ell: int
    matrix: np.ndarray
    rhs: np.ndarray
    beta: float
    phi: float
    tau: float
    prefactor: complex
    lhs: np.ndarray

    @property
    def row_scales(self) -> np.ndarray:
        """Per-row factors prefactor * e^{+-i(ell+2) phi}"""
        phase = np.exp(1j * (self.ell + 2) * self.phi)
        return self.prefactor * np.array([phase, 1.0 / phase])

    @property
    def normalized_matrix(self) -> np.ndarray:
        return self.matrix / self.row_scales[:, None]

    @property
    def normalized_rhs(self) -> np.ndarray:
        return self.rhs / self.row_scales

    @property
    def normalized_lhs(self) -> np.ndarray:
        return self.lhs / self.row_scales

    @property
    def det(self) -> complex:
        return complex(np.linalg.det(self.normalized_matrix))

    @property
    def condition(self) -> float:
        return float(np.linalg.cond(self.normalized_matrix))

    def forced_solution(self) -> np.ndarray:
        """Solution of normalized_matrix x = normalized_rhs"""
        return np.linalg.solve(self.normalized_matrix, self.normalized_rhs)

    def solve_residual(self, x: np.ndarray) -> float:
        """Relative residual of a candidate solution"""
        rhs = self.normalized_rhs
        scale = max(float(np.linalg.norm(rhs)), float(np.linalg.norm(self.normalized_matrix) * np.linalg.norm(x)), 1e-300)
        return float(np.linalg.norm(self.normalized_matrix @ x - rhs) / scale)

    def to_dict(self) -> dict:
        det = self.det
        return {
            "ell": self.ell,
            "beta": self.beta,
            "phi": self.phi,
            "tau": self.tau,
            "det": [det.real, det.imag],
            "condition": self.condition,
        }


def assemble_step_system(
    sector: Sector,
    eta: complex,
    ell: int,
    tau: float,
    gamma1: float,
    field: FourierBesselField | None = None,
    phi: float | None = None,
) -> StepSystem:
    """Assemble the step-ell system from both perpendicular choices.

    Args:
        sector: Corner sector
        eta: Conductive constant (nonzero)
        ell: Induction step (>= 0)
        tau: CGO amplitude
        gamma1: kappa^2 of the local Fourier-Bessel field
        field: Trial field for the G-terms (default: zero field)
        phi: CGO direction angle (default: sector bisector)

    Returns:
        StepSystem
    """
    if eta == 0:
        raise DomainError("the conductive constant eta must be nonzero")
    if ell < 0:
        raise DomainError(f"induction step must be >= 0, got {ell}")
    if gamma1 <= 0:
        raise DomainError(f"gamma1 must be positive, got {gamma1}")
    phi = sector.bisector if phi is None else phi
    kappa = math.sqrt(gamma1)
    field = field if field is not None else FourierBesselField(kappa, [0.0], [0.0])
    if not math.isclose(field.kappa, kappa, rel_tol=1e-12):
        raise DomainError(f"field wavenumber {field.kappa} differs from sqrt(gamma1) = {kappa}")

    prefactor = step_prefactor(eta, ell, gamma1)
    unscaled = step_matrix(sector.theta_m, sector.theta_M, ell)
    scale = tau ** (ell + 2)
    rows, rhs, lhs = [], [], []
    for i, choice in enumerate((PerpChoice.PLUS, PerpChoice.MINUS)):
        params = CGOParams(phi, choice, tau)
        rows.append(prefactor * _row_phase(params, ell) * unscaled[i])
        lead, g_terms = boundary_terms(field, sector, params, ell, eta)
        lhs.append(scale * lead)
        rhs.append(scale * g_terms)
    return StepSystem(
        ell=ell,
        matrix=np.array(rows),
        rhs=np.array(rhs),
        beta=sector.beta,
        phi=phi,
        tau=float(tau),
        prefactor=complex(prefactor),
        lhs=np.array(lhs),
    )


def moment_step_matrix(
    sector: Sector,
    eta: complex,
    ell: int,
    tau: float,
    gamma1: float,
    phi: float | None = None,
) -> np.ndarray:
    """tau^{ell+2}-scaled leading boundary integrals of the unit modes
    e^{+-i(ell+1) theta} J_{ell+1}, one column per mode.

    Agrees with StepSystem.matrix up to the ray-end remainder
    e^{-Re(mu) r0} of the truncated moments.
    """
    phi = sector.bisector if phi is None else phi
    kappa = math.sqrt(gamma1)
    modes = (
        FourierBesselField.single(kappa, ell + 1, a=1.0),
        FourierBesselField.single(kappa, ell + 1, b=1.0),
    )
    scale = tau ** (ell + 2)
    matrix = np.empty((2, 2), dtype=complex)
    for i, choice in enumerate((PerpChoice.PLUS, PerpChoice.MINUS)):
        params = CGOParams(phi, choice, tau)
        for j, mode in enumerate(modes):
            matrix[i, j] = scale * boundary_terms(mode, sector, params, ell, eta)[0]
    return matrix
