"""Admissibility of a total field at polygon vertices

Condition I asks that the shrinking-ball averages of |u| at a vertex stay
away from zero; condition II asks the same of |grad u| (and is only used
at vertices whose angle lies in (0, pi) minus {pi/2}). The limits rho -> 0
are estimated from ball averages on a geometric radius grid by a
Richardson table.

Both conditions are homogeneous in u, so the threshold theta_adm is
applied relative to the field scale at the largest radius,
S = max(avg|u|(rho_0), rho_0 avg|grad u|(rho_0)); multiplying u by a
nonzero constant never changes a verdict.
"""

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from ..config.thresholds import LabThresholds
from ..errors import ConfigError, DomainError, LabWarning
from ..geometry.polygon import Polygon
from ..geometry.structures import CellScatterer, NestScatterer
from .forward import total_field_function

RIGHT_ANGLE_POLICIES = ("cond2", "always", "never")
RADIAL_NODES = 8
ANGULAR_NODES = 32
CONVERGENCE_TOL = 0.1
RIGHT_ANGLE_TOL = 1e-9

FieldFunction = Callable[[np.ndarray], np.ndarray]


class Verdict(str, Enum):
    COND_I = "CondI"
    COND_II = "CondII"
    INADMISSIBLE = "Inadmissible"


@dataclass
class AdmissibilityResult:
    """Verdict at one vertex with the data behind it

    Attributes:
        verdict: CondI, CondII or Inadmissible
        partials: Partial derivatives with a nonzero limit ("d1", "d2") for CondII
        u_limit: Extrapolated avg |u|
        grad_limit: Extrapolated avg |grad u|
        partial_limits: Extrapolated avg |d1 u|, avg |d2 u|
        scale: Homogeneous field scale S
        rho_grid: Radii used
        u_averages: avg |u| per radius
        grad_averages: avg |grad u| per radius
        converged: False when the Richardson table did not settle
        reason: Human-readable explanation
    """

    verdict: Verdict
    partials: tuple[str, ...]
    u_limit: float
    grad_limit: float
    partial_limits: tuple[float, float]
    scale: float
    rho_grid: list[float]
    u_averages: list[float] = field(default_factory=list)
    grad_averages: list[float] = field(default_factory=list)
    converged: bool = True
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "partials": list(self.partials),
            "u_limit": self.u_limit,
            "grad_limit": self.grad_limit,
            "partial_limits": list(self.partial_limits),
            "scale": self.scale,
            "rho_grid": self.rho_grid,
            "u_averages": self.u_averages,
            "grad_averages": self.grad_averages,
            "converged": self.converged,
            "reason": self.reason,
        }


def ball_rule(rho: float) -> tuple[np.ndarray, np.ndarray]:
    """Polar Gauss-trapezoid points on B(0, rho) and weights summing to 1"""
    x, w = np.polynomial.legendre.leggauss(RADIAL_NODES)
    r = 0.5 * rho * (x + 1.0)
    wr = 0.5 * rho * w * r
    t = 2 * math.pi * (np.arange(ANGULAR_NODES) + 0.5) / ANGULAR_NODES
    rr, tt = np.meshgrid(r, t, indexing="ij")
    weights = np.repeat(wr, ANGULAR_NODES) * (2 * math.pi / ANGULAR_NODES) / (math.pi * rho * rho)
    points = np.column_stack([(rr * np.cos(tt)).ravel(), (rr * np.sin(tt)).ravel()])
    return points, weights


def finite_difference_gradient(func: FieldFunction, step: float) -> Callable[[np.ndarray], np.ndarray]:
    """Central differences of func with the given step"""

    def gradient(points: np.ndarray) -> np.ndarray:
        dx = np.array([step, 0.0])
        dy = np.array([0.0, step])
        d1 = (func(points + dx) - func(points - dx)) / (2 * step)
        d2 = (func(points + dy) - func(points - dy)) / (2 * step)
        return np.column_stack([d1, d2])

    return gradient


def geometric_radii(rho0: float, count: int = 4, ratio: float = 0.5) -> np.ndarray:
    return rho0 * ratio ** np.arange(count)


def _grid_ratio(rho_grid: np.ndarray) -> float:
    if rho_grid.size < 4:
        raise DomainError(f"admissibility needs >= 4 radii, got {rho_grid.size}")
    if np.any(rho_grid <= 0) or np.any(np.diff(rho_grid) >= 0):
        raise DomainError("radii must be positive and strictly decreasing")
    ratios = rho_grid[1:] / rho_grid[:-1]
    if not np.allclose(ratios, ratios[0], rtol=1e-9):
        raise DomainError("radii must form a geometric grid")
    return float(ratios[0])


def richardson(values, ratio: float) -> tuple[float, float]:
    """Extrapolate values(rho_j) to rho -> 0 on a geometric grid.

    Eliminates rho, rho^2, ... successively. Returns the final estimate
    and the change between the last two table levels.
    """
    table = [np.asarray(values, dtype=float)]
    factor = 1.0 / ratio
    for level in range(1, len(values)):
        prev = table[-1]
        scale = factor**level
        table.append((scale * prev[1:] - prev[:-1]) / (scale - 1.0))
    last = float(table[-1][0])
    before = float(table[-2][-1])
    return last, abs(last - before)


def admissibility_check(
    func: FieldFunction,
    vertex,
    rho_grid,
    gradient: Callable[[np.ndarray], np.ndarray] | None = None,
    vertex_angle: float | None = None,
    right_angle_policy: str = "cond2",
    config: LabThresholds | None = None,
) -> AdmissibilityResult:
    """Classify a field at a vertex as CondI, CondII or Inadmissible.

    Args:
        func: Field evaluator on (N, 2) points, FemSolution or ModalSolution
        vertex: Vertex coordinates
        rho_grid: >= 4 decreasing radii forming a geometric grid
        gradient: Gradient evaluator (default: central differences)
        vertex_angle: Interior angle at the vertex (needed for the right-angle policy)
        right_angle_policy: "cond2" (pi/2 excluded for condition II only),
            "always" (right-angle vertices are never admissible) or "never"
        config: LabThresholds (theta_adm)

    Returns:
        AdmissibilityResult
    """
    config = config or LabThresholds()
    func = total_field_function(func)
    if right_angle_policy not in RIGHT_ANGLE_POLICIES:
        raise ConfigError(f"right_angle_policy must be one of {RIGHT_ANGLE_POLICIES}, got {right_angle_policy!r}")
    rho_grid = np.asarray(rho_grid, dtype=float).ravel()
    ratio = _grid_ratio(rho_grid)
    vertex = np.asarray(vertex, dtype=float)
    gradient = gradient or finite_difference_gradient(func, 1e-4 * float(rho_grid[-1]))

    u_avg, grad_avg, partial_avg = [], [], []
    for rho in rho_grid:
        points, weights = ball_rule(float(rho))
        points = points + vertex
        u_avg.append(float(weights @ np.abs(func(points))))
        grads = np.asarray(gradient(points))
        grad_avg.append(float(weights @ np.sqrt(np.sum(np.abs(grads) ** 2, axis=1))))
        partial_avg.append([float(weights @ np.abs(grads[:, j])) for j in range(2)])
    partial_avg = np.array(partial_avg)

    u_limit, u_change = richardson(u_avg, ratio)
    grad_limit, grad_change = richardson(grad_avg, ratio)
    partial_limits = [richardson(partial_avg[:, j], ratio)[0] for j in range(2)]
    u_limit, grad_limit = max(u_limit, 0.0), max(grad_limit, 0.0)
    partial_limits = tuple(max(p, 0.0) for p in partial_limits)

    rho0 = float(rho_grid[0])
    scale = max(u_avg[0], rho0 * grad_avg[0])
    level = config.theta_adm * scale
    right_angle = vertex_angle is not None and abs(vertex_angle - 0.5 * math.pi) <= RIGHT_ANGLE_TOL
    converged = (
        u_change <= CONVERGENCE_TOL * max(u_limit, level)
        and rho0 * grad_change <= CONVERGENCE_TOL * max(rho0 * grad_limit, level)
    )
    if not converged and scale > 0:
        warnings.warn(
            f"ball-average extrapolation at {vertex.tolist()} did not settle", LabWarning, stacklevel=2
        )

    result = AdmissibilityResult(
        verdict=Verdict.INADMISSIBLE,
        partials=(),
        u_limit=u_limit,
        grad_limit=grad_limit,
        partial_limits=partial_limits,
        scale=scale,
        rho_grid=rho_grid.tolist(),
        u_averages=u_avg,
        grad_averages=grad_avg,
        converged=converged,
    )
    if scale == 0:
        result.reason = "field vanishes on every ball"
        return result
    if right_angle and right_angle_policy == "always":
        result.reason = "right-angle vertex excluded by policy"
        return result
    if u_limit > level:
        result.verdict = Verdict.COND_I
        result.reason = f"avg|u| -> {u_limit:.3e} > {level:.3e}"
        return result
    if vertex_angle is not None and not 0 < vertex_angle < math.pi:
        result.reason = "condition II needs a convex vertex angle"
        return result
    if right_angle and right_angle_policy == "cond2":
        result.reason = "condition II is not used at right-angle vertices"
        return result
    if rho0 * grad_limit > level:
        result.verdict = Verdict.COND_II
        result.partials = tuple(
            name for name, value in zip(("d1", "d2"), partial_limits) if rho0 * value > level
        )
        result.reason = f"avg|u| -> {u_limit:.3e}, avg|grad u| -> {grad_limit:.3e}"
        return result
    result.reason = f"avg|u| -> {u_limit:.3e} and avg|grad u| -> {grad_limit:.3e} both vanish"
    return result


def polygon_admissibility(
    func: FieldFunction,
    polygon: Polygon,
    rho0: float | None = None,
    gradient: Callable[[np.ndarray], np.ndarray] | None = None,
    right_angle_policy: str = "cond2",
    config: LabThresholds | None = None,
) -> list[AdmissibilityResult]:
    """admissibility_check at every vertex of a polygon (default rho0 = diam / 20)"""
    rho0 = polygon.diameter / 20 if rho0 is None else rho0
    radii = geometric_radii(rho0)
    return [
        admissibility_check(
            func,
            polygon.vertices[i],
            radii,
            gradient=gradient,
            vertex_angle=polygon.interior_angle(i),
            right_angle_policy=right_angle_policy,
            config=config,
        )
        for i in range(len(polygon))
    ]


def scatterer_polygons(scatterer) -> list[Polygon]:
    """Layers of a nest or cells of a cell structure (disks have none)"""
    if isinstance(scatterer, NestScatterer):
        return list(scatterer.layers)
    if isinstance(scatterer, CellScatterer):
        return list(scatterer.cells)
    return []


def scatterer_admissibility(
    func,
    scatterer,
    rho0: float | None = None,
    right_angle_policy: str = "cond2",
    config: LabThresholds | None = None,
) -> list[tuple[int, int, AdmissibilityResult]]:
    """(polygon index, vertex index, result) for every vertex of every polygon"""
    func = total_field_function(func)
    results = []
    for p, polygon in enumerate(scatterer_polygons(scatterer)):
        checks = polygon_admissibility(
            func, polygon, rho0=rho0, right_angle_policy=right_angle_policy, config=config
        )
        results += [(p, v, result) for v, result in enumerate(checks)]
    return results
