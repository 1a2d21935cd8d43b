"""Conforming triangulations of the truncated domain B_Rt

Every interface is inserted into a constrained Delaunay triangulation as
a chain of segments, so that no triangle straddles an interface. Segment
points along polygon edges are graded towards the vertices with spacing
clamp(h sqrt(t), h^2/2, h), t the distance to the nearest vertex; inside
each region Triangle's area bound follows the local wavelength,
h / sqrt(max(1, |q|)). Circles (disk interfaces and |x| = Rt) are sampled
at half the local spacing.

Export format (plain text, whitespace separated):

    # conductive-corner-lab mesh v1
    h <h>  radius <Rt>
    nodes <N>            then N lines "x y"
    triangles <M>        then M lines "i j k region"
    interface_edges <E>  then E lines "i j interface_id"
    boundary_edges <B>   then B lines "i j"
    corners <C>          then C lines "i"
"""

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import triangle
from scipy.spatial import cKDTree
from shapely.geometry import LineString
from shapely.ops import unary_union

from ...errors import DomainError, GeometryError, SolverError
from ...geometry.structures import CellScatterer, DiskScatterer, LinearIndex, NestScatterer
from ...geometry.validation import validate_structure

MIN_ANGLE = 30
FIT_FRACTION = 0.8
POINTS_PER_WAVELENGTH = 10
MIN_CIRCLE_NODES = 32
CURVE_SPACING = 0.5
_SEED_ANGLE = 0.1


def _equilateral_area(h: float) -> float:
    return math.sqrt(3.0) / 4.0 * h * h


def graded_parameters(length: float, h: float, floor: float | None = None) -> np.ndarray:
    """Points 0 = t_0 < ... < t_m = length graded towards both ends.

    Step size clamp(h sqrt(t), floor, h) with t the distance to the nearer
    end; floor defaults to h^2/2.
    """
    floor = 0.5 * h * h if floor is None else floor
    left = [0.0]
    while True:
        t = left[-1]
        step = min(max(h * math.sqrt(t), floor), h)
        if t + step > 0.5 * length - 0.5 * step:
            break
        left.append(t + step)
    step = min(max(h * math.sqrt(left[-1]), floor), h)
    right = [length - t for t in reversed(left)]
    middle = [0.5 * length] if right[0] - left[-1] > 1.5 * step else []
    return np.array(left + middle + right)


class _PointSet:
    """Deduplicating point list keyed on rounded coordinates"""

    def __init__(self, scale: float):
        self.tol = 1e-10 * scale
        self.points: list[tuple[float, float]] = []
        self._index: dict[tuple[int, int], int] = {}

    def add(self, point) -> int:
        key = (int(round(point[0] / self.tol)), int(round(point[1] / self.tol)))
        if key not in self._index:
            self._index[key] = len(self.points)
            self.points.append((float(point[0]), float(point[1])))
        return self._index[key]


@dataclass
class _Layout:
    """Interfaces, region seeds and coefficient tables of a scatterer"""

    pieces: list[tuple[np.ndarray, np.ndarray, int, bool]] = field(default_factory=list)  # (a, b, id, graded)
    circles: list[tuple[float, int, float]] = field(default_factory=list)  # (radius, id, spacing)
    seeds: list[tuple[np.ndarray, int, float]] = field(default_factory=list)  # (point, region, max_area)
    indices: dict[int, LinearIndex] = field(default_factory=dict)
    etas: dict[int, complex] = field(default_factory=dict)
    corners: list[np.ndarray] = field(default_factory=list)


def _region_h(h: float, q_max: float) -> float:
    return h / math.sqrt(max(1.0, q_max))


def _polygon_pieces(vertices: np.ndarray) -> list[tuple[np.ndarray, np.ndarray]]:
    return [(vertices[i], vertices[(i + 1) % len(vertices)]) for i in range(len(vertices))]


def _nest_layout(s: NestScatterer, h: float) -> _Layout:
    layout = _Layout()
    for i, (layer, q, eta) in enumerate(zip(s.layers, s.indices, s.etas), start=1):
        layout.pieces += [(a, b, i, True) for a, b in _polygon_pieces(layer.vertices)]
        layout.corners += list(layer.vertices)
        layout.etas[i] = eta
        layout.indices[i] = q
        region = layer.shapely
        if i < len(s.layers):
            region = region.difference(s.layers[i].shapely)
        seed = np.array(region.representative_point().coords[0])
        layout.seeds.append((seed, i, _equilateral_area(_region_h(h, q.max_abs_on(layer)))))
    return layout


def _cell_layout(s: CellScatterer, h: float) -> _Layout:
    layout = _Layout()
    rings = [LineString(np.vstack([c.vertices, c.vertices[:1]])) for c in s.cells]
    noded = unary_union(rings)
    lines = getattr(noded, "geoms", [noded])
    for line in lines:
        coords = np.asarray(line.coords)
        layout.pieces += [(coords[j], coords[j + 1], 1, True) for j in range(len(coords) - 1)]
    layout.etas[1] = s.eta
    for i, (cell, q) in enumerate(zip(s.cells, s.indices), start=1):
        layout.corners += list(cell.vertices)
        layout.indices[i] = q
        seed = np.array(cell.shapely.representative_point().coords[0])
        layout.seeds.append((seed, i, _equilateral_area(_region_h(h, q.max_abs_on(cell)))))
    return layout


def _disk_layout(s: DiskScatterer, h: float) -> _Layout:
    layout = _Layout()
    radii = list(s.radii) + [0.0]
    direction = np.array([math.cos(_SEED_ANGLE), math.sin(_SEED_ANGLE)])
    for i, (radius, q, eta) in enumerate(zip(s.radii, s.q_values, s.etas), start=1):
        h_in = _region_h(h, abs(q))
        h_out = h if i == 1 else _region_h(h, abs(s.q_values[i - 2]))
        layout.circles.append((radius, i, min(h_in, h_out)))
        layout.etas[i] = eta
        layout.indices[i] = LinearIndex(q)
        seed = 0.5 * (radius + radii[i]) * direction
        layout.seeds.append((seed, i, _equilateral_area(h_in)))
    return layout


def _circle_points(radius: float, spacing: float) -> np.ndarray:
    count = max(MIN_CIRCLE_NODES, int(math.ceil(2 * math.pi * radius / (CURVE_SPACING * spacing))))
    t = 2 * math.pi * np.arange(count) / count
    return radius * np.column_stack([np.cos(t), np.sin(t)])


@dataclass(frozen=True, eq=False)
class Mesh:
    """Conforming P1 triangulation of B_Rt

    Attributes:
        nodes: (N, 2) coordinates
        triangles: (M, 3) counter-clockwise node indices
        regions: (M,) region id per triangle (0 = background)
        interface_edges: (E, 2) node pairs on interfaces
        interface_ids: (E,) interface id per edge
        boundary_edges: (B, 2) counter-clockwise edges on |x| = Rt
        corners: Node indices of polygon vertices
        region_indices: Refractive index per region id
        interface_etas: Conductive constant per interface id
        h: Characteristic background mesh size
        radius: Truncation radius Rt
        scatterer_radius: Largest |x| over the scatterer
    """

    nodes: np.ndarray
    triangles: np.ndarray
    regions: np.ndarray
    interface_edges: np.ndarray
    interface_ids: np.ndarray
    boundary_edges: np.ndarray
    corners: np.ndarray
    region_indices: dict[int, LinearIndex]
    interface_etas: dict[int, complex]
    h: float
    radius: float
    scatterer_radius: float

    @property
    def n_nodes(self) -> int:
        return self.nodes.shape[0]

    @property
    def n_triangles(self) -> int:
        return self.triangles.shape[0]

    @property
    def areas(self) -> np.ndarray:
        p = self.nodes[self.triangles]
        d1, d2 = p[:, 1] - p[:, 0], p[:, 2] - p[:, 0]
        return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])

    @property
    def diameters(self) -> np.ndarray:
        """Longest edge of every triangle"""
        p = self.nodes[self.triangles]
        edges = np.stack([p[:, 1] - p[:, 0], p[:, 2] - p[:, 1], p[:, 0] - p[:, 2]], axis=1)
        return np.max(np.hypot(edges[..., 0], edges[..., 1]), axis=1)

    @property
    def centroids(self) -> np.ndarray:
        return self.nodes[self.triangles].mean(axis=1)

    @property
    def corner_vertices(self) -> np.ndarray:
        return self.nodes[self.corners]

    def edge_set(self) -> set[tuple[int, int]]:
        """All triangle edges as sorted node pairs"""
        t = self.triangles
        pairs = np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
        pairs.sort(axis=1)
        return set(map(tuple, pairs.tolist()))

    def interface_nodes(self, interface_id: int) -> np.ndarray:
        return np.unique(self.interface_edges[self.interface_ids == interface_id])

    def boundary_nodes(self) -> np.ndarray:
        """Nodes on |x| = Rt in counter-clockwise order"""
        return self.boundary_edges[:, 0]

    def min_diameter_near(self, point, radius: float) -> float:
        """Smallest triangle diameter among triangles with a node within radius of point"""
        point = np.asarray(point, dtype=float)
        close = np.hypot(*(self.nodes - point).T) <= radius
        touching = np.any(close[self.triangles], axis=1)
        if not np.any(touching):
            raise DomainError(f"no mesh node within {radius} of {point.tolist()}")
        return float(np.min(self.diameters[touching]))

    def locate(self, points) -> tuple[np.ndarray, np.ndarray]:
        """(triangle index, barycentric coordinates) per point; index -1 outside the mesh"""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        tree = cKDTree(self.centroids)
        found = np.full(points.shape[0], -1, dtype=int)
        bary = np.zeros((points.shape[0], 3))
        candidates = min(12, self.n_triangles)
        _, near = tree.query(points, k=candidates)
        near = np.atleast_2d(near).reshape(points.shape[0], -1)
        for j in range(near.shape[1]):
            todo = found < 0
            if not np.any(todo):
                break
            lam = self._barycentric(near[todo, j], points[todo])
            inside = np.all(lam >= -1e-12, axis=1)
            rows = np.nonzero(todo)[0][inside]
            found[rows] = near[todo, j][inside]
            bary[rows] = lam[inside]
        for row in np.nonzero(found < 0)[0]:
            lam = self._barycentric(np.arange(self.n_triangles), np.repeat(points[row : row + 1], self.n_triangles, axis=0))
            hit = np.nonzero(np.all(lam >= -1e-12, axis=1))[0]
            if hit.size:
                found[row], bary[row] = hit[0], lam[hit[0]]
        return found, bary

    def _barycentric(self, tri: np.ndarray, points: np.ndarray) -> np.ndarray:
        p = self.nodes[self.triangles[tri]]
        d1, d2, dp = p[:, 1] - p[:, 0], p[:, 2] - p[:, 0], points - p[:, 0]
        det = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
        l1 = (dp[:, 0] * d2[:, 1] - dp[:, 1] * d2[:, 0]) / det
        l2 = (d1[:, 0] * dp[:, 1] - d1[:, 1] * dp[:, 0]) / det
        return np.column_stack([1 - l1 - l2, l1, l2])

    def interpolate(self, values: np.ndarray, points) -> np.ndarray:
        """P1 interpolation of nodal values"""
        tri, bary = self.locate(points)
        if np.any(tri < 0):
            raise DomainError("points outside the truncated domain")
        return np.sum(np.asarray(values)[self.triangles[tri]] * bary, axis=1)

    def export(self, path: str | Path) -> Path:
        """Write the plain-text mesh format described in the module docstring"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        lines = ["# conductive-corner-lab mesh v1", f"h {self.h!r} radius {self.radius!r}"]
        lines.append(f"nodes {self.n_nodes}")
        lines += [f"{x!r} {y!r}" for x, y in self.nodes.tolist()]
        lines.append(f"triangles {self.n_triangles}")
        lines += [f"{i} {j} {k} {r}" for (i, j, k), r in zip(self.triangles.tolist(), self.regions.tolist())]
        lines.append(f"interface_edges {len(self.interface_edges)}")
        lines += [f"{i} {j} {t}" for (i, j), t in zip(self.interface_edges.tolist(), self.interface_ids.tolist())]
        lines.append(f"boundary_edges {len(self.boundary_edges)}")
        lines += [f"{i} {j}" for i, j in self.boundary_edges.tolist()]
        lines.append(f"corners {len(self.corners)}")
        lines += [str(i) for i in self.corners.tolist()]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    def to_dict(self) -> dict:
        return {
            "nodes": self.n_nodes,
            "triangles": self.n_triangles,
            "interface_edges": int(len(self.interface_edges)),
            "boundary_edges": int(len(self.boundary_edges)),
            "h": self.h,
            "radius": self.radius,
            "min_diameter": float(np.min(self.diameters)),
        }


def check_resolution(h: float, k: float, q_max: float = 1.0) -> None:
    """Raise DomainError unless h gives >= 10 nodes per background wavelength"""
    wavelength = 2 * math.pi / k
    if h > wavelength / POINTS_PER_WAVELENGTH:
        raise DomainError(
            f"h = {h:.4g} is too coarse for k = {k:.4g}: need h <= lambda/{POINTS_PER_WAVELENGTH} "
            f"= {wavelength / POINTS_PER_WAVELENGTH:.4g}"
        )


def mesh_scatterer(scatterer, Rt: float, h: float, k: float | None = None) -> Mesh:
    """Triangulate B_Rt with every interface of the scatterer resolved by edges.

    Args:
        scatterer: NestScatterer, CellScatterer or DiskScatterer
        Rt: Truncation radius (scatterer must fit in B_{0.8 Rt})
        h: Background mesh size
        k: Optional wavenumber; checks h against the wavelength

    Returns:
        Mesh
    """
    if not (h > 0 and Rt > 0):
        raise DomainError(f"mesh size and truncation radius must be positive, got h={h}, Rt={Rt}")
    if k is not None:
        check_resolution(h, k)
    failures = validate_structure(scatterer)
    if failures:
        raise GeometryError("invalid scatterer: " + "; ".join(f"{f.name}: {f.reason}" for f in failures))
    if scatterer.circumradius > FIT_FRACTION * Rt:
        raise DomainError(
            f"scatterer radius {scatterer.circumradius:.4g} exceeds {FIT_FRACTION} * Rt = {FIT_FRACTION * Rt:.4g}"
        )

    if isinstance(scatterer, NestScatterer):
        layout = _nest_layout(scatterer, h)
    elif isinstance(scatterer, CellScatterer):
        layout = _cell_layout(scatterer, h)
    elif isinstance(scatterer, DiskScatterer):
        layout = _disk_layout(scatterer, h)
    else:
        raise DomainError(f"cannot mesh {type(scatterer).__name__}")

    points = _PointSet(Rt)
    segments: list[tuple[int, int]] = []
    segment_ids: list[int] = []

    scatter_h = min((math.sqrt(a / _equilateral_area(1.0)) for _, _, a in layout.seeds), default=h)
    for a, b, interface_id, graded in layout.pieces:
        length = float(np.hypot(*(b - a)))
        ts = graded_parameters(length, scatter_h) if graded else np.linspace(0, length, 2)
        chain = [points.add(a + (b - a) * t / length) for t in ts]
        segments += list(zip(chain[:-1], chain[1:]))
        segment_ids += [interface_id] * (len(chain) - 1)
    for radius, interface_id, spacing in layout.circles:
        ring = [points.add(p) for p in _circle_points(radius, spacing)]
        segments += list(zip(ring, ring[1:] + ring[:1]))
        segment_ids += [interface_id] * len(ring)
    boundary = [points.add(p) for p in _circle_points(Rt, h)]
    n_interface = len(segments)
    segments += list(zip(boundary, boundary[1:] + boundary[:1]))

    background_seed = 0.5 * (scatterer.circumradius + Rt) * np.array([math.cos(_SEED_ANGLE), math.sin(_SEED_ANGLE)])
    regions = [[*background_seed, 0, _equilateral_area(h)]]
    regions += [[*seed, region, area] for seed, region, area in layout.seeds]

    n_input = len(points.points)
    try:
        result = triangle.triangulate(
            {
                "vertices": np.array(points.points),
                "segments": np.array(segments, dtype=np.int32),
                "regions": np.array(regions, dtype=float),
            },
            f"pq{MIN_ANGLE}AaYY",
        )
    except Exception as e:  # triangle raises bare RuntimeError/ValueError
        raise SolverError(f"triangulation failed: {e}") from e
    nodes = np.asarray(result["vertices"], dtype=float)
    if nodes.shape[0] < n_input or not np.allclose(nodes[:n_input], points.points):
        raise SolverError("triangulation reordered the constrained points")

    segment_array = np.array(segments, dtype=int)
    corners = sorted({points.add(c) for c in layout.corners})
    indices = {0: LinearIndex(1.0), **layout.indices}
    return Mesh(
        nodes=nodes,
        triangles=np.asarray(result["triangles"], dtype=int),
        regions=np.asarray(result["triangle_attributes"], dtype=float).ravel().round().astype(int),
        interface_edges=segment_array[:n_interface],
        interface_ids=np.array(segment_ids, dtype=int),
        boundary_edges=segment_array[n_interface:],
        corners=np.array(corners, dtype=int),
        region_indices=indices,
        interface_etas=dict(layout.etas),
        h=float(h),
        radius=float(Rt),
        scatterer_radius=float(scatterer.circumradius),
    )
