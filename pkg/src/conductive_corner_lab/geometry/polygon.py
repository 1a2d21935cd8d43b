"""Polygons

Counter-clockwise vertex lists. Convexity is a property here, not a
construction invariant, so that structure validation can report it.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from shapely.geometry import Polygon as ShapelyPolygon

from ..errors import GeometryError


def _signed_area(vertices: np.ndarray) -> float:
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


@dataclass(frozen=True, eq=False)
class Polygon:
    """Simple polygon stored counter-clockwise

    Attributes:
        vertices: (N, 2) array of vertex coordinates, N >= 3
    """

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise GeometryError(f"polygon needs an (N>=3, 2) vertex array, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise GeometryError("polygon vertices must be finite")
        if np.allclose(v[0], v[-1]) and v.shape[0] > 3:
            v = v[:-1]
        area = _signed_area(v)
        if abs(area) <= 1e-14 * max(1.0, float(np.ptp(v)) ** 2):
            raise GeometryError("polygon has zero area")
        if area < 0:
            v = v[::-1].copy()
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polygon) and np.array_equal(self.vertices, other.vertices)

    def __hash__(self) -> int:
        return hash(self.vertices.tobytes())

    def __len__(self) -> int:
        return self.vertices.shape[0]

    @property
    def area(self) -> float:
        return _signed_area(self.vertices)

    @property
    def diameter(self) -> float:
        v = self.vertices
        diff = v[:, None, :] - v[None, :, :]
        return float(np.max(np.hypot(diff[..., 0], diff[..., 1])))

    @property
    def circumradius(self) -> float:
        """Largest vertex distance from the origin"""
        return float(np.max(np.hypot(self.vertices[:, 0], self.vertices[:, 1])))

    def edges(self) -> list[tuple[np.ndarray, np.ndarray]]:
        """Edges (start, end) in counter-clockwise order"""
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def neighbours(self, index: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(previous, vertex, next) around vertex index"""
        n = len(self)
        if not 0 <= index < n:
            raise GeometryError(f"vertex index {index} out of range for {n}-gon")
        v = self.vertices
        return v[(index - 1) % n], v[index], v[(index + 1) % n]

    def interior_angle(self, index: int) -> float:
        """Interior angle at vertex index, in (0, 2pi)"""
        prev, vertex, nxt = self.neighbours(index)
        a = nxt - vertex
        b = prev - vertex
        cross = a[0] * b[1] - a[1] * b[0]
        dot = a[0] * b[0] + a[1] * b[1]
        angle = math.atan2(cross, dot)
        return angle if angle > 0 else angle + 2 * math.pi

    def interior_angles(self) -> np.ndarray:
        return np.array([self.interior_angle(i) for i in range(len(self))])

    def turn_crosses(self) -> np.ndarray:
        """Cross product of consecutive edge vectors at every vertex"""
        v = self.vertices
        e_in = v - np.roll(v, 1, axis=0)
        e_out = np.roll(v, -1, axis=0) - v
        return e_in[:, 0] * e_out[:, 1] - e_in[:, 1] * e_out[:, 0]

    def is_convex(self, tol: float = 1e-12) -> bool:
        """Strict convexity: every turn is a left turn"""
        scale = self.diameter**2
        return bool(np.all(self.turn_crosses() > tol * scale))

    @cached_property
    def shapely(self) -> ShapelyPolygon:
        return ShapelyPolygon(self.vertices)

    def to_shapely(self) -> ShapelyPolygon:
        return self.shapely

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Strict interior test for (N, 2) points (convex polygons)"""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        v = self.vertices
        inside = np.ones(points.shape[0], dtype=bool)
        for i in range(len(v)):
            a, b = v[i], v[(i + 1) % len(v)]
            cross = (b[0] - a[0]) * (points[:, 1] - a[1]) - (b[1] - a[1]) * (points[:, 0] - a[0])
            inside &= cross > 0
        return inside

    def to_list(self) -> list[list[float]]:
        return self.vertices.tolist()

    @classmethod
    def regular(cls, n: int, radius: float = 1.0, center=(0.0, 0.0), phase: float = 0.0) -> "Polygon":
        """Regular n-gon"""
        t = phase + 2 * math.pi * np.arange(n) / n
        return cls(np.column_stack([center[0] + radius * np.cos(t), center[1] + radius * np.sin(t)]))

    @classmethod
    def square(cls, side: float = 1.0, center=(0.0, 0.0)) -> "Polygon":
        """Axis-aligned square"""
        h = 0.5 * side
        cx, cy = center
        return cls([[cx - h, cy - h], [cx + h, cy - h], [cx + h, cy + h], [cx - h, cy + h]])
