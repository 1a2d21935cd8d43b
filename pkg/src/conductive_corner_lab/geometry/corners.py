"""Local corner frames

The Laplacian is invariant under rigid motions, so every polygon corner can
be studied in a frame with the vertex at the origin. The local frame maps
the edge towards the next (counter-clockwise) vertex onto the positive
x-axis, giving the sector (0, beta).
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import GeometryError
from .polygon import Polygon
from .sector import Sector


def _segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    ab = b - a
    t = float(np.dot(p - a, ab) / np.dot(ab, ab))
    t = min(1.0, max(0.0, t))
    return float(np.hypot(*(a + t * ab - p)))


@dataclass(frozen=True)
class RigidMotion:
    """x_global = translation + R(rotation) @ x_local

    Attributes:
        rotation: Rotation angle in radians
        translation: (2,) translation vector
    """

    rotation: float
    translation: tuple[float, float]

    @property
    def matrix(self) -> np.ndarray:
        c, s = math.cos(self.rotation), math.sin(self.rotation)
        return np.array([[c, -s], [s, c]])

    def apply(self, points: np.ndarray) -> np.ndarray:
        """Map local (N, 2) points to global coordinates"""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        return points @ self.matrix.T + np.asarray(self.translation)

    def inverse(self, points: np.ndarray) -> np.ndarray:
        """Map global (N, 2) points to local coordinates"""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        return (points - np.asarray(self.translation)) @ self.matrix

    def to_dict(self) -> dict:
        return {"rotation": self.rotation, "translation": list(self.translation)}


def max_corner_radius(polygon: Polygon, vertex_index: int) -> float:
    """Distance from the vertex to the nearest non-incident edge"""
    n = len(polygon)
    _, vertex, _ = polygon.neighbours(vertex_index)
    distances = [
        _segment_distance(vertex, a, b)
        for i, (a, b) in enumerate(polygon.edges())
        if i not in (vertex_index, (vertex_index - 1) % n)
    ]
    return min(distances) if distances else math.inf


def corner_at_vertex(
    polygon: Polygon,
    vertex_index: int,
    r0: float,
) -> tuple[Sector, RigidMotion]:
    """Local sector at a polygon vertex.

    Args:
        polygon: Convex polygon
        vertex_index: Vertex index (counter-clockwise order)
        r0: Sector radius; B(vertex, r0) may meet only the two incident edges

    Returns:
        (Sector in the local frame, RigidMotion local -> global)
    """
    n = len(polygon)
    if not 0 <= vertex_index < n:
        raise GeometryError(f"vertex index {vertex_index} out of range for {n}-gon")
    if r0 <= 0:
        raise GeometryError(f"r0 must be positive, got {r0}")
    if not polygon.is_convex():
        raise GeometryError("corner frames are defined for convex polygons only")

    limit = max_corner_radius(polygon, vertex_index)
    if r0 >= limit:
        raise GeometryError(
            f"r0={r0} too large at vertex {vertex_index}: the ball meets a third edge "
            f"(distance {limit:.6g})"
        )

    _, vertex, nxt = polygon.neighbours(vertex_index)
    direction = nxt - vertex
    rotation = math.atan2(direction[1], direction[0])
    beta = polygon.interior_angle(vertex_index)
    sector = Sector(0.0, beta, r0)
    motion = RigidMotion(rotation, (float(vertex[0]), float(vertex[1])))
    return sector, motion


def corner_sectors(polygon: Polygon, r0_fraction: float = 0.5) -> list[tuple[Sector, RigidMotion]]:
    """Corner frames at all vertices, each with r0 = fraction of its admissible radius"""
    return [
        corner_at_vertex(polygon, i, r0_fraction * max_corner_radius(polygon, i))
        for i in range(len(polygon))
    ]
