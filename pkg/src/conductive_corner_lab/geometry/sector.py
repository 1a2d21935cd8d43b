"""Corner sectors

S_r0 = {x : theta_m <= arg x <= theta_M, |x| < r0}, the stage of the
corner analysis. The two boundary rays Gamma^- (angle theta_m) and
Gamma^+ (angle theta_M) carry the transmission conditions; Lambda_r0 is
the closing arc.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import GeometryError


@dataclass(frozen=True)
class Sector:
    """Corner sector with vertex at the origin

    Attributes:
        theta_m: Polar angle of the lower boundary ray Gamma^-
        theta_M: Polar angle of the upper boundary ray Gamma^+
        r0: Radius
    """

    theta_m: float
    theta_M: float
    r0: float = 1.0

    def __post_init__(self):
        if not (-math.pi <= self.theta_m < self.theta_M < math.pi):
            raise GeometryError(
                f"sector angles must satisfy -pi <= theta_m < theta_M < pi, "
                f"got ({self.theta_m}, {self.theta_M})"
            )
        if not 0.0 < self.theta_M - self.theta_m < math.pi:
            raise GeometryError(f"opening angle {self.theta_M - self.theta_m} not in (0, pi)")
        if not self.r0 > 0:
            raise GeometryError(f"r0 must be positive, got {self.r0}")

    @property
    def beta(self) -> float:
        """Opening angle theta_M - theta_m"""
        return self.theta_M - self.theta_m

    @property
    def bisector(self) -> float:
        """Polar angle of the bisecting ray"""
        return 0.5 * (self.theta_m + self.theta_M)

    @property
    def ray_angles(self) -> tuple[float, float]:
        """(theta_m, theta_M)"""
        return (self.theta_m, self.theta_M)

    def ray_points(self, n: int = 2) -> tuple[np.ndarray, np.ndarray]:
        """Sample points on Gamma^- and Gamma^+ (from the vertex to r0)"""
        r = np.linspace(0.0, self.r0, n)
        lower = np.column_stack([r * math.cos(self.theta_m), r * math.sin(self.theta_m)])
        upper = np.column_stack([r * math.cos(self.theta_M), r * math.sin(self.theta_M)])
        return lower, upper

    def contains(self, points: np.ndarray, tol: float = 1e-12) -> np.ndarray:
        """Whether points (N, 2) lie in the closed sector"""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        r = np.hypot(points[:, 0], points[:, 1])
        theta = np.arctan2(points[:, 1], points[:, 0])
        # angle measured from theta_m, wrapped to [0, 2pi)
        rel = np.mod(theta - self.theta_m, 2 * math.pi)
        in_angle = (rel <= self.beta + tol) | (rel >= 2 * math.pi - tol) | (r <= tol)
        return in_angle & (r <= self.r0 + tol)

    def with_radius(self, r0: float) -> "Sector":
        """Same opening, different radius"""
        return Sector(self.theta_m, self.theta_M, r0)

    @classmethod
    def symmetric(cls, beta: float, r0: float = 1.0, axis: float = 0.0) -> "Sector":
        """Sector of opening beta centered on the ray at angle axis"""
        return cls(axis - 0.5 * beta, axis + 0.5 * beta, r0)

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization"""
        return {"theta_m": self.theta_m, "theta_M": self.theta_M, "r0": self.r0, "beta": self.beta}
