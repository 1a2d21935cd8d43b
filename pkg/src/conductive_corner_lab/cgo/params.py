"""CGO phase parameters

rho = -tau (d + i d_perp) with d = (cos phi, sin phi) and d_perp one of
the two unit normals. rho . rho = tau^2 (|d|^2 - |d_perp|^2 + 2i d.d_perp)
vanishes identically, so e^{rho . x} is harmonic. Along the ray at polar
angle theta, rho . x = -tau r e^{+-i(theta - phi)}.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from ..errors import DomainError
from ..geometry.sector import Sector


class PerpChoice(str, Enum):
    """Choice of d_perp"""

    PLUS = "plus"  # d_perp = (-sin phi, cos phi)
    MINUS = "minus"  # d_perp = (sin phi, -cos phi)

    @property
    def sign(self) -> int:
        return 1 if self is PerpChoice.PLUS else -1


@dataclass(frozen=True)
class CGOParams:
    """Direction, perpendicular choice and amplitude of a CGO phase

    Attributes:
        phi: Polar angle of the direction d
        perp_choice: PLUS or MINUS
        tau: Amplitude, tau > 0
    """

    phi: float
    perp_choice: PerpChoice = PerpChoice.PLUS
    tau: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "perp_choice", PerpChoice(self.perp_choice))
        if not (math.isfinite(self.tau) and self.tau > 0):
            raise DomainError(f"tau must be positive and finite, got {self.tau}")
        if not math.isfinite(self.phi):
            raise DomainError("phi must be finite")

    @property
    def d(self) -> np.ndarray:
        return np.array([math.cos(self.phi), math.sin(self.phi)])

    @property
    def d_perp(self) -> np.ndarray:
        s = self.perp_choice.sign
        return np.array([-s * math.sin(self.phi), s * math.cos(self.phi)])

    @property
    def rho(self) -> np.ndarray:
        return -self.tau * (self.d + 1j * self.d_perp)

    def rho_dot_rho(self) -> complex:
        rho = self.rho
        return complex(rho[0] * rho[0] + rho[1] * rho[1])

    def with_tau(self, tau: float) -> "CGOParams":
        return replace(self, tau=tau)

    def with_perp(self, perp_choice: PerpChoice | str) -> "CGOParams":
        return replace(self, perp_choice=PerpChoice(perp_choice))

    def to_dict(self) -> dict:
        return {"phi": self.phi, "perp_choice": self.perp_choice.value, "tau": self.tau}


def pick_direction(sector: Sector, tau: float = 1.0) -> tuple[CGOParams, float]:
    """Bisector direction and its uniform decay constant.

    Args:
        sector: Corner sector
        tau: Amplitude of the returned template

    Returns:
        (CGOParams with phi = bisector and PLUS, varsigma = cos(beta/2)),
        so that d . x_hat >= varsigma on the closed sector
    """
    beta = sector.theta_M - sector.theta_m
    if not 0 < beta < math.pi:
        raise DomainError(f"opening angle {beta} gives no positive lower bound for d . x_hat")
    return CGOParams(sector.bisector, PerpChoice.PLUS, tau), math.cos(0.5 * beta)


def cgo_phase(params: CGOParams, x) -> np.ndarray | complex:
    """e^{rho . x} for points x of shape (2,) or (N, 2)"""
    points = np.asarray(x, dtype=float)
    values = np.exp(points @ params.rho)
    return complex(values) if values.ndim == 0 else values


def ray_phase_rate(params: CGOParams, theta) -> np.ndarray | complex:
    """mu(theta) with rho . x = -mu r on the ray at polar angle theta"""
    mu = params.tau * np.exp(1j * params.perp_choice.sign * (np.asarray(theta, dtype=float) - params.phi))
    return complex(mu) if mu.ndim == 0 else mu
