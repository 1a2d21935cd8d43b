"""Corner regularity probes

Near a corner the total field is only Hoelder continuous. The probe fits
sup_{|x - v| = rho} |u(x) - u(v)| ~ C rho^alpha on a geometric radius
grid by least squares in log-log coordinates. Finite elements pollute
the exponent, so only loose statements (alpha > 0.2) are meaningful.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from ..config.thresholds import LabThresholds
from ..errors import DomainError, LabWarning
from ..scattering.fem import FemSolution
from .forward import total_field_function

ALPHA_MAX = 1.5
CIRCLE_SAMPLES = 64
DEFAULT_RADII = 6
# Relative size below which the oscillation counts as zero
DEGENERATE_LEVEL = 1e-12
CORNER_TOL = 1e-9


@dataclass
class RegularityProbe:
    """Hoelder exponent estimate at a point

    Attributes:
        alpha: Exponent clipped to (0, 1.5] (NaN for degenerate fits)
        slope: Raw least-squares slope
        constant: Fitted C
        r_squared: Coefficient of determination of the log-log fit
        rho_grid: Radii used
        oscillations: sup |u(x) - u(v)| per radius
        reliable: r_squared >= fit floor and the fit is not degenerate
        degenerate: The field does not vary around the point
        message: Diagnostic text
    """

    alpha: float
    slope: float
    constant: float
    r_squared: float
    rho_grid: list[float]
    oscillations: list[float] = field(default_factory=list)
    reliable: bool = True
    degenerate: bool = False
    message: str = ""

    def to_dict(self) -> dict:
        def clean(x):
            return None if math.isnan(x) else x

        return {
            "alpha": clean(self.alpha),
            "slope": clean(self.slope),
            "constant": clean(self.constant),
            "r_squared": clean(self.r_squared),
            "rho_grid": self.rho_grid,
            "oscillations": self.oscillations,
            "reliable": self.reliable,
            "degenerate": self.degenerate,
            "message": self.message,
        }


def _tagged_corner(sol: FemSolution, vertex: np.ndarray) -> None:
    corners = sol.mesh.corner_vertices
    scale = max(sol.mesh.scatterer_radius, 1.0)
    if corners.size == 0 or np.min(np.hypot(*(corners - vertex).T)) > CORNER_TOL * scale:
        raise DomainError(f"{vertex.tolist()} is not a tagged corner of the mesh")


def default_radii(sol, vertex: np.ndarray, count: int = DEFAULT_RADII) -> np.ndarray:
    """Geometric radii (ratio 1/2) from a tenth of the scatterer size down.

    For finite-element solutions the smallest radius stays above two local
    element diameters so the probe does not just see the P1 interpolant.
    """
    if isinstance(sol, FemSolution):
        rho_max = 0.1 * sol.mesh.scatterer_radius
        local = sol.mesh.min_diameter_near(vertex, rho_max)
        rho_min = 2.0 * local
        count = max(4, min(count, int(math.floor(math.log2(rho_max / rho_min))) + 1))
        return rho_max * 0.5 ** np.arange(count)
    return 0.1 * 0.5 ** np.arange(count)


def corner_regularity_probe(
    sol,
    vertex,
    rho_grid=None,
    config: LabThresholds | None = None,
) -> RegularityProbe:
    """Fit the local Hoelder exponent of the total field at a point.

    Args:
        sol: FemSolution (vertex must be a tagged corner), ModalSolution
            or a field evaluator on (N, 2) points
        vertex: Probe point
        rho_grid: Decreasing radii (default: default_radii)
        config: LabThresholds (fit_r_squared floor)

    Returns:
        RegularityProbe; unreliable fits also issue a LabWarning
    """
    config = config or LabThresholds()
    vertex = np.asarray(vertex, dtype=float)
    if isinstance(sol, FemSolution):
        _tagged_corner(sol, vertex)
    func = total_field_function(sol)
    radii = default_radii(sol, vertex) if rho_grid is None else np.asarray(rho_grid, dtype=float).ravel()
    if radii.size < 3 or np.any(radii <= 0):
        raise DomainError("regularity probe needs >= 3 positive radii")

    centre = complex(func(vertex[None, :])[0])
    theta = 2 * math.pi * np.arange(CIRCLE_SAMPLES) / CIRCLE_SAMPLES
    directions = np.column_stack([np.cos(theta), np.sin(theta)])
    oscillations = np.array([np.max(np.abs(func(vertex + rho * directions) - centre)) for rho in radii])

    level = DEGENERATE_LEVEL * max(abs(centre), float(np.max(np.abs(oscillations))), 1.0)
    if np.any(oscillations <= level):
        message = "field does not vary around the point; nothing to fit"
        warnings.warn(message, LabWarning, stacklevel=2)
        return RegularityProbe(
            alpha=math.nan,
            slope=math.nan,
            constant=math.nan,
            r_squared=math.nan,
            rho_grid=radii.tolist(),
            oscillations=oscillations.tolist(),
            reliable=False,
            degenerate=True,
            message=message,
        )

    fit = stats.linregress(np.log(radii), np.log(oscillations))
    slope = float(fit.slope)
    r_squared = float(fit.rvalue**2)
    alpha = float(np.clip(slope, np.finfo(float).tiny, ALPHA_MAX))
    reliable = r_squared >= config.fit_r_squared and slope > 0
    message = f"alpha = {alpha:.3f} (slope {slope:.3f}, r^2 = {r_squared:.3f})"
    if not reliable:
        message = f"unreliable fit: {message}"
        warnings.warn(message, LabWarning, stacklevel=2)
    return RegularityProbe(
        alpha=alpha,
        slope=slope,
        constant=float(math.exp(fit.intercept)),
        r_squared=r_squared,
        rho_grid=radii.tolist(),
        oscillations=oscillations.tolist(),
        reliable=reliable,
        message=message,
    )
