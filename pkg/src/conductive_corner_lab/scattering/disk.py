"""Separation-of-variables oracle for concentric conductive disks

Region 0 is the exterior r > R_1, region i the annulus R_{i+1} < r < R_i
(region N is the inner disk). Per mode n the radial factor is

    region 0:  c_n J_n(k r) + b_n H_n(k r)
    region i:  A_i J_n(k_i r) + B_i Y_n(k_i r),   k_i = k sqrt(q_i)
    region N:  A_N J_n(k_N r)

and on each circle r = R_i the conductive transmission conditions
u_out = u_in, d_r u_in = d_r u_out + eta_i u_out give two equations, so
the 2N unknowns (b_n, A_1, B_1, ..., A_N) solve a 2N x 2N system.
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, ResonanceError
from ..geometry.structures import DiskScatterer
from ..logging.solver_logger import SolverLogger
from ..parallel import ordered_map
from ..specfun.bessel import cyl_bessel, cyl_bessel_derivative
from .farfield import FarFieldPattern, far_field_from_modes
from .incident import IncidentField, PlaneWave

EXTRA_MODES = 15
RESONANCE_CONDITION = 1e13


def default_mie_order(k: float, scatterer: DiskScatterer) -> int:
    """ceil(k R_1 max(1, sqrt|q|)) + 15"""
    contrast = max(1.0, max(math.sqrt(abs(q)) for q in scatterer.q_values))
    return int(math.ceil(k * scatterer.radii[0] * contrast)) + EXTRA_MODES


def _wavenumbers(scatterer: DiskScatterer, k: float) -> np.ndarray:
    """k, k sqrt(q_1), ..., k sqrt(q_N)"""
    return np.array([k] + [k * np.sqrt(complex(q)) for q in scatterer.q_values], dtype=complex)


def _basis(region: int, n: int, r, kr: complex, innermost: bool) -> tuple[np.ndarray, np.ndarray]:
    """Values and r-derivatives of the two radial basis functions, shape (2, len(r))"""
    z = kr * np.atleast_1d(np.asarray(r, dtype=float))
    first = "J"
    second = "H1" if region == 0 else "Y"
    values = np.zeros((2, z.size), dtype=complex)
    derivs = np.zeros((2, z.size), dtype=complex)
    values[0] = cyl_bessel(first, n, z)
    derivs[0] = kr * cyl_bessel_derivative(first, n, z)
    if not innermost:
        values[1] = cyl_bessel(second, n, z)
        derivs[1] = kr * cyl_bessel_derivative(second, n, z)
    return values, derivs


@dataclass(frozen=True, eq=False)
class ModalSolution:
    """Per-mode solution of the disk problem

    Attributes:
        scatterer: Concentric disks
        k: Background wavenumber
        incident: Incident field
        orders: Mode numbers -N..N
        coefficients: (modes, N+1, 2); region 0 holds (c_n, b_n), region i (A_i, B_i)
        conditions: Condition number of each equilibrated mode system
    """

    scatterer: DiskScatterer
    k: float
    incident: IncidentField
    orders: np.ndarray
    coefficients: np.ndarray
    conditions: np.ndarray

    def __post_init__(self):
        for name in ("orders", "coefficients", "conditions"):
            getattr(self, name).setflags(write=False)

    @property
    def incident_coeffs(self) -> np.ndarray:
        return self.coefficients[:, 0, 0]

    @property
    def scattered(self) -> np.ndarray:
        """b_n"""
        return self.coefficients[:, 0, 1]

    @property
    def wavenumbers(self) -> np.ndarray:
        return _wavenumbers(self.scatterer, self.k)

    def region_of(self, r) -> np.ndarray:
        """0 outside R_1, i on R_{i+1} <= r < R_i"""
        radii = np.asarray(self.scatterer.radii)
        r = np.asarray(r, dtype=float)
        return np.sum(r[..., None] < radii, axis=-1)

    def radial(self, region: int, r) -> tuple[np.ndarray, np.ndarray]:
        """(modes, len(r)) radial factors and their r-derivatives in one region"""
        innermost = region == self.scatterer.n_layers
        kr = self.wavenumbers[region]
        r = np.atleast_1d(np.asarray(r, dtype=float))
        values = np.zeros((self.orders.size, r.size), dtype=complex)
        derivs = np.zeros_like(values)
        for m, n in enumerate(self.orders):
            coeff = self.coefficients[m, region]
            basis, dbasis = _basis(region, int(n), r, kr, innermost)
            values[m] = coeff @ basis
            derivs[m] = coeff @ dbasis
        return values, derivs

    def to_dict(self) -> dict:
        return {
            "solver": "mie",
            "k": self.k,
            "scatterer_hash": self.scatterer.content_hash(),
            "incident": self.incident.to_dict(),
            "modes": int(self.orders.size),
            "max_condition": float(np.max(self.conditions)),
            "max_transmission_residual": float(np.max(transmission_residuals(self))),
        }


def _mode_system(scatterer: DiskScatterer, k: float, n: int, c_n: complex) -> tuple[np.ndarray, np.ndarray]:
    """Raw 2N x 2N interface matrix and right-hand side of mode n"""
    layers = scatterer.n_layers
    size = 2 * layers
    matrix = np.zeros((size, size), dtype=complex)
    rhs = np.zeros(size, dtype=complex)
    wavenumbers = _wavenumbers(scatterer, k)

    def columns(region: int) -> list[int]:
        if region == 0:
            return [0]
        first = 1 + 2 * (region - 1)
        return [first] if region == layers else [first, first + 1]

    for i, (radius, eta) in enumerate(zip(scatterer.radii, scatterer.etas), start=1):
        row_c, row_f = 2 * (i - 1), 2 * (i - 1) + 1
        outer, inner = i - 1, i
        values, derivs = _basis(outer, n, radius, wavenumbers[outer], False)
        if outer == 0:
            # J_n part is the known incident mode
            rhs[row_c] -= c_n * values[0, 0]
            rhs[row_f] += c_n * (derivs[0, 0] + eta * values[0, 0])
            matrix[row_c, 0] += values[1, 0]
            matrix[row_f, 0] += -derivs[1, 0] - eta * values[1, 0]
        else:
            for col, j in zip(columns(outer), range(2)):
                matrix[row_c, col] += values[j, 0]
                matrix[row_f, col] += -derivs[j, 0] - eta * values[j, 0]
        values, derivs = _basis(inner, n, radius, wavenumbers[inner], inner == layers)
        for col, j in zip(columns(inner), range(2)):
            matrix[row_c, col] -= values[j, 0]
            matrix[row_f, col] += derivs[j, 0]
    return matrix, rhs


def _unpack(x: np.ndarray, layers: int, c_n: complex) -> np.ndarray:
    coeffs = np.zeros((layers + 1, 2), dtype=complex)
    coeffs[0] = (c_n, x[0])
    for region in range(1, layers + 1):
        first = 1 + 2 * (region - 1)
        coeffs[region, 0] = x[first]
        if region < layers:
            coeffs[region, 1] = x[first + 1]
    return coeffs


def _solve_mode(scatterer: DiskScatterer, k: float, n: int, c_n: complex) -> tuple[np.ndarray, float]:
    matrix, rhs = _mode_system(scatterer, k, n, c_n)
    row_scale = np.max(np.abs(matrix), axis=1)
    col_scale = np.max(np.abs(matrix / np.where(row_scale > 0, row_scale, 1.0)[:, None]), axis=0)
    if np.any(row_scale == 0) or np.any(col_scale == 0):
        raise ResonanceError(n, k, math.inf)
    scaled = matrix / row_scale[:, None] / col_scale[None, :]
    condition = float(np.linalg.cond(scaled))
    if not math.isfinite(condition) or condition > RESONANCE_CONDITION:
        raise ResonanceError(n, k, condition)
    x = np.linalg.solve(scaled, rhs / row_scale) / col_scale
    return _unpack(x, scatterer.n_layers, c_n), condition


def mie_solve(
    scatterer: DiskScatterer,
    k: float,
    incident: IncidentField,
    order: int | None = None,
    logger: SolverLogger | None = None,
    threads: int | None = None,
) -> ModalSolution:
    """Solve the conductive disk problem mode by mode.

    Args:
        scatterer: Concentric disks
        k: Background wavenumber (> 0)
        incident: Incident field with the same k
        order: Modal truncation N (default: default_mie_order)
        logger: Optional SolverLogger
        threads: Worker count over modes (default from CCLAB_THREADS)

    Returns:
        ModalSolution

    Raises:
        ResonanceError: A mode system is numerically singular
    """
    if not isinstance(scatterer, DiskScatterer):
        raise DomainError(f"the modal oracle handles disk scatterers only, got {scatterer.kind}")
    if not k > 0:
        raise DomainError(f"wavenumber must be positive, got {k}")
    if not math.isclose(incident.k, k, rel_tol=1e-12):
        raise DomainError(f"incident wavenumber {incident.k} differs from k = {k}")
    if any(q == 0 for q in scatterer.q_values):
        raise DomainError("refractive index q = 0 has no cylinder-function basis")
    incident.check_outside(scatterer.radii[0])

    order = default_mie_order(k, scatterer) if order is None else int(order)
    orders, c = incident.modal_coefficients(order)
    started = time.perf_counter()
    try:
        results = ordered_map(
            lambda m: _solve_mode(scatterer, k, int(orders[m]), complex(c[m])),
            range(orders.size),
            threads,
        )
    except ResonanceError as e:
        if logger is not None:
            logger.log(
                "mie",
                scatterer.content_hash(),
                k,
                incident=incident.to_dict(),
                dofs=int(orders.size),
                elapsed_ms=1000 * (time.perf_counter() - started),
                status="failed",
                message=str(e),
            )
        raise

    solution = ModalSolution(
        scatterer=scatterer,
        k=float(k),
        incident=incident,
        orders=orders,
        coefficients=np.array([coeffs for coeffs, _ in results]),
        conditions=np.array([cond for _, cond in results]),
    )
    if logger is not None:
        logger.log(
            "mie",
            scatterer.content_hash(),
            k,
            incident=incident.to_dict(),
            dofs=int(orders.size),
            residual=float(np.max(transmission_residuals(solution))),
            elapsed_ms=1000 * (time.perf_counter() - started),
        )
    return solution


def _polar(points) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    points = np.atleast_2d(np.asarray(points, dtype=float))
    return points, np.hypot(points[:, 0], points[:, 1]), np.arctan2(points[:, 1], points[:, 0])


def _angular_sum(orders: np.ndarray, radial: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """sum_n radial[n, j] e^{in theta_j}"""
    return np.sum(radial * np.exp(1j * np.outer(orders, theta)), axis=0)


def field_eval(sol: ModalSolution, points) -> np.ndarray:
    """Total field: u^i + u^s outside R_1, layered modal sums inside"""
    points, r, theta = _polar(points)
    regions = sol.region_of(r)
    out = np.zeros(r.size, dtype=complex)
    outside = regions == 0
    if np.any(outside):
        out[outside] = sol.incident.evaluate(points[outside]) + scattered_field(sol, points[outside])
    for region in range(1, sol.scatterer.n_layers + 1):
        mask = regions == region
        if np.any(mask):
            values, _ = sol.radial(region, r[mask])
            out[mask] = _angular_sum(sol.orders, values, theta[mask])
    return out


def scattered_field(sol: ModalSolution, points) -> np.ndarray:
    """u^s = sum_n b_n H_n(kr) e^{in theta} outside; u - u^i inside"""
    points, r, theta = _polar(points)
    outside = sol.region_of(r) == 0
    out = np.zeros(r.size, dtype=complex)
    if np.any(outside):
        hankel = cyl_bessel("H1", sol.orders[:, None], sol.k * r[outside][None, :])
        out[outside] = _angular_sum(sol.orders, sol.scattered[:, None] * hankel, theta[outside])
    if np.any(~outside):
        out[~outside] = field_eval(sol, points[~outside]) - sol.incident.evaluate(points[~outside])
    return out


def interface_traces(sol: ModalSolution, interface: int, theta) -> dict[str, np.ndarray]:
    """u and d_r u on r = R_i from the outer and the inner expansion.

    Args:
        sol: ModalSolution
        interface: 1-based interface index i
        theta: Angles on the circle

    Returns:
        {"u_out", "du_out", "u_in", "du_in"} sampled at theta
    """
    if not 1 <= interface <= sol.scatterer.n_layers:
        raise DomainError(f"interface index must lie in 1..{sol.scatterer.n_layers}, got {interface}")
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    radius = sol.scatterer.radii[interface - 1]
    traces = {}
    for side, region in (("out", interface - 1), ("in", interface)):
        values, derivs = sol.radial(region, [radius])
        traces[f"u_{side}"] = _angular_sum(sol.orders, np.repeat(values, theta.size, axis=1), theta)
        traces[f"du_{side}"] = _angular_sum(sol.orders, np.repeat(derivs, theta.size, axis=1), theta)
    return traces


def transmission_residuals(sol: ModalSolution) -> np.ndarray:
    """(modes, N, 2) relative residuals of continuity and the conductive flux jump.

    Each residual is divided by the largest single term entering the
    condition, a backward-error measure that stays meaningful for
    high modes where all terms are tiny.
    """
    layers = sol.scatterer.n_layers
    wavenumbers = sol.wavenumbers
    residuals = np.zeros((sol.orders.size, layers, 2))
    for m, n in enumerate(sol.orders):
        for i, (radius, eta) in enumerate(zip(sol.scatterer.radii, sol.scatterer.etas), start=1):
            terms = {}
            for side, region in (("out", i - 1), ("in", i)):
                values, derivs = _basis(region, int(n), radius, wavenumbers[region], region == layers)
                coeff = sol.coefficients[m, region]
                terms[side] = (coeff * values[:, 0], coeff * derivs[:, 0])
            u_out, du_out = terms["out"]
            u_in, du_in = terms["in"]
            cont_scale = max(np.max(np.abs(u_out)), np.max(np.abs(u_in)), 1e-300)
            flux_scale = max(
                np.max(np.abs(du_out)), np.max(np.abs(du_in)), abs(eta) * np.max(np.abs(u_out)), 1e-300
            )
            residuals[m, i - 1, 0] = abs(u_out.sum() - u_in.sum()) / cont_scale
            residuals[m, i - 1, 1] = abs(du_in.sum() - du_out.sum() - eta * u_out.sum()) / flux_scale
    return residuals


def far_field(sol: ModalSolution, directions=360) -> FarFieldPattern:
    """u_inf(theta) = sqrt(2/(pi k)) e^{-i pi/4} sum_n b_n (-i)^n e^{in theta}"""
    return far_field_from_modes(sol.orders, sol.scattered, sol.k, directions)


def optical_theorem_residual(sol: ModalSolution) -> float:
    """|int |u_inf|^2 + sqrt(8 pi/k) Re(e^{i pi/4} u_inf(d))| for plane-wave incidence.

    Zero for lossless media (real q, real eta). The integral is taken
    exactly from the modes: int |u_inf|^2 = (4/k) sum |b_n|^2.
    """
    if not isinstance(sol.incident, PlaneWave):
        raise DomainError("the optical theorem applies to plane-wave incidence")
    energy = 4.0 / sol.k * float(np.sum(np.abs(sol.scattered) ** 2))
    forward = far_field(sol, [sol.incident.theta_d]).values[0]
    extinction = -math.sqrt(8 * math.pi / sol.k) * (np.exp(0.25j * math.pi) * forward).real
    return abs(energy - extinction)
