"""Moment integrals of the CGO phase over corner rays and sectors

On the ray at angle theta, e^{rho . x} = e^{-mu r} with
mu = tau e^{+-i(theta - phi)}, so every ray integral of r^s reduces to

    int_0^zeta r^s e^{-mu r} dr = gamma(s+1, mu zeta) / mu^{s+1}
                               = Gamma(s+1) / mu^{s+1} + O((2/Re mu) e^{-zeta Re mu / 2}).

Sector integrals use the exact radial moment and adaptive quadrature in
theta. Leading terms are the Gamma(s+1)/mu^{s+1} parts in closed form.
"""

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from ..errors import DecayViolationError, DomainError
from ..geometry.sector import Sector
from ..specfun.fourier_bessel import FourierBesselField
from ..specfun.gamma import gamma_function, lower_incomplete_gamma
from .params import CGOParams, PerpChoice, ray_phase_rate

MONOMIALS = ("1", "x1", "x2")
ANGULAR_TOL = 1e-12


@dataclass(frozen=True)
class MomentValue:
    """Exact ray moment, its leading term and the remainder bound"""

    exact: complex
    leading: complex
    remainder_bound: float

    @property
    def remainder(self) -> float:
        return abs(self.exact - self.leading)


def segment_moment(s: float, mu: complex, zeta: float) -> MomentValue:
    """int_0^zeta r^s e^{-mu r} dr with its Gamma(s+1)/mu^{s+1} asymptotics.

    Args:
        s: Power, s >= 0
        mu: Complex decay rate, Re mu > 0
        zeta: Segment length, zeta > 0

    Returns:
        MomentValue(exact, leading, remainder_bound)
    """
    mu = complex(mu)
    if mu.real <= 0:
        raise DecayViolationError(f"Re mu must be positive, got mu={mu}")
    if s < 0:
        raise DomainError(f"s must be non-negative, got {s}")
    if zeta <= 0:
        raise DomainError(f"zeta must be positive, got {zeta}")
    power = mu ** (s + 1)
    exact = lower_incomplete_gamma(s + 1, mu * zeta) / power
    leading = gamma_function(s + 1) / power
    bound = 2.0 / mu.real * np.exp(-0.5 * zeta * mu.real)
    return MomentValue(exact, leading, float(bound))


def _checked_rate(params: CGOParams, theta: float) -> complex:
    mu = ray_phase_rate(params, theta)
    if mu.real <= 0:
        raise DecayViolationError(
            f"CGO phase does not decay along the ray at theta={theta:.6g} "
            f"(phi={params.phi:.6g}, mu={mu:.6g})"
        )
    return mu


def boundary_corner_integral(
    field: FourierBesselField,
    sector: Sector,
    params: CGOParams,
    m: float = 1,
) -> tuple[complex, complex]:
    """Integral over the two corner rays of (sum_n a_n e^{in theta} + b_n e^{-in theta}) r^m e^{rho . x}.

    Args:
        field: Coefficients (a_n, b_n); kappa is not used, the radial
            weight r^m stands in for the leading power of J_n
        sector: Corner sector (rays at theta_m and theta_M, length r0)
        params: CGO parameters
        m: Radial power

    Returns:
        (exact, leading) with leading = sum over rays of c(theta) Gamma(m+1)/mu^{m+1}
    """
    n = np.arange(field.order + 1)
    exact = 0j
    leading = 0j
    for theta in sector.ray_angles:
        mu = _checked_rate(params, theta)
        angular = complex(np.sum(field.a * np.exp(1j * n * theta) + field.b * np.exp(-1j * n * theta)))
        if angular == 0:
            continue
        moment = segment_moment(m, mu, sector.r0)
        exact += angular * moment.exact
        leading += angular * moment.leading
    return exact, leading


def _monomial_factor(monomial: str):
    if monomial == "1":
        return 1, lambda theta: 1.0
    if monomial == "x1":
        return 2, np.cos
    if monomial == "x2":
        return 2, np.sin
    raise DomainError(f"unknown monomial {monomial!r} (expected one of {MONOMIALS})")


def angular_bracket(monomial: str, theta: float, perp_choice: PerpChoice = PerpChoice.PLUS) -> complex:
    """Antiderivative in theta of the leading area integrand, without the Gamma/tau prefactor.

    PLUS: 1 -> e^{-2i theta}/(-2i); x1 -> (-sin theta + 3i cos theta) e^{-3i theta}/8;
    x2 -> (2 e^{-2i theta} - e^{-4i theta})/8. MINUS gives the complex conjugates.
    """
    if monomial == "1":
        value = np.exp(-2j * theta) / (-2j)
    elif monomial == "x1":
        value = (-np.sin(theta) + 3j * np.cos(theta)) * np.exp(-3j * theta) / 8
    elif monomial == "x2":
        value = (2 * np.exp(-2j * theta) - np.exp(-4j * theta)) / 8
    else:
        raise DomainError(f"unknown monomial {monomial!r} (expected one of {MONOMIALS})")
    value = complex(value)
    return value if PerpChoice(perp_choice) is PerpChoice.PLUS else value.conjugate()


def area_integral(
    monomial: str,
    theta_m: float,
    theta_M: float,
    r0: float,
    params: CGOParams,
) -> tuple[complex, complex]:
    """Sector integral of monomial * e^{rho . x} for raw angle limits.

    theta_m == theta_M is the degenerate sector and gives (0, 0).
    """
    power, factor = _monomial_factor(monomial)
    if theta_M == theta_m:
        return 0j, 0j
    for theta in (theta_m, theta_M):
        _checked_rate(params, theta)

    def integrand(theta):
        mu = ray_phase_rate(params, theta)
        return factor(theta) * segment_moment(power, mu, r0).exact

    exact, _ = integrate.quad(
        integrand, theta_m, theta_M, complex_func=True, epsabs=0.0, epsrel=ANGULAR_TOL, limit=200
    )

    sign = params.perp_choice.sign
    scale = gamma_function(power + 1) * np.exp(1j * sign * (power + 1) * params.phi) / params.tau ** (power + 1)
    bracket = angular_bracket(monomial, theta_M, params.perp_choice) - angular_bracket(
        monomial, theta_m, params.perp_choice
    )
    return complex(exact), complex(scale * bracket)


def sector_area_integral(monomial: str, sector: Sector, params: CGOParams) -> tuple[complex, complex]:
    """int_{S_r0} monomial(x) e^{rho . x} dx and its leading term.

    Args:
        monomial: "1", "x1" or "x2"
        sector: Corner sector
        params: CGO parameters

    Returns:
        (exact, leading); leading is Gamma(2)/tau^2 (monomial 1) or
        Gamma(3)/tau^3 (x1, x2) times the closed-form angular integral
    """
    return area_integral(monomial, sector.theta_m, sector.theta_M, sector.r0, params)
