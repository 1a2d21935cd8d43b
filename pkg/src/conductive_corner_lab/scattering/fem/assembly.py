"""P1 finite-element matrices

All element contributions are computed in vectorized form and summed by
converting COO triplets to CSR, which adds duplicates in a fixed order.

Bilinear forms (real hat functions, no conjugation):
- stiffness   int grad u . grad v
- mass        int w u v,     w linear on each triangle (exact)
- edge mass   int_e eta u v  on interface edges
- DtN         int_{|x|=Rt} (T u) v,  T u = sum_n k h_n(k Rt) u_n e^{in theta}
"""

import math

import numpy as np
from scipy import sparse

from ...specfun.bessel import cyl_bessel, hankel_log_derivative
from .mesh import Mesh

# degree-4 symmetric rule on the reference triangle (barycentric points)
_DUNAVANT_A = (0.445948490915965, 0.091576213509771)
_DUNAVANT_W = (0.223381589678011, 0.109951743655322)


def dunavant_rule() -> tuple[np.ndarray, np.ndarray]:
    """(6, 3) barycentric points and weights summing to 1"""
    points, weights = [], []
    for a, w in zip(_DUNAVANT_A, _DUNAVANT_W):
        b = 1.0 - 2.0 * a
        points += [(a, a, b), (a, b, a), (b, a, a)]
        weights += [w, w, w]
    return np.array(points), np.array(weights)


def _coo(rows, cols, values, size: int) -> sparse.csr_matrix:
    return sparse.coo_matrix((np.ravel(values), (np.ravel(rows), np.ravel(cols))), shape=(size, size)).tocsr()


def _local_pairs(t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    rows = np.repeat(t[:, :, None], 3, axis=2)
    cols = np.repeat(t[:, None, :], 3, axis=1)
    return rows, cols


def gradients(mesh: Mesh) -> tuple[np.ndarray, np.ndarray]:
    """(M, 3, 2) gradients of the hat functions and (M,) areas"""
    p = mesh.nodes[mesh.triangles]
    areas = mesh.areas
    # grad phi_i = rot90(edge opposite i) / (2 |T|)
    opposite = np.stack([p[:, 2] - p[:, 1], p[:, 0] - p[:, 2], p[:, 1] - p[:, 0]], axis=1)
    grads = np.stack([-opposite[..., 1], opposite[..., 0]], axis=-1) / (2 * areas[:, None, None])
    return grads, areas


def stiffness_matrix(mesh: Mesh) -> sparse.csr_matrix:
    grads, areas = gradients(mesh)
    local = np.einsum("mik,mjk->mij", grads, grads) * areas[:, None, None]
    rows, cols = _local_pairs(mesh.triangles)
    return _coo(rows, cols, local, mesh.n_nodes)


def weighted_mass_matrix(mesh: Mesh, vertex_weights: np.ndarray) -> sparse.csr_matrix:
    """int w phi_i phi_j with w linear per triangle, given at its (M, 3) vertices.

    Exact: M_ii = |T|/60 (4 w_i + 2 S), M_ij = |T|/60 (w_i + w_j + S), S = sum w.
    """
    w = np.asarray(vertex_weights)
    total = w.sum(axis=1)
    local = (w[:, :, None] + w[:, None, :] + total[:, None, None]).astype(complex)
    diag = np.arange(3)
    local[:, diag, diag] = 4 * w + 2 * total[:, None]
    local *= (mesh.areas / 60.0)[:, None, None]
    rows, cols = _local_pairs(mesh.triangles)
    return _coo(rows, cols, local, mesh.n_nodes)


def mass_matrix(mesh: Mesh) -> sparse.csr_matrix:
    return weighted_mass_matrix(mesh, np.ones(mesh.triangles.shape)).real.tocsr()


def region_index_values(mesh: Mesh) -> np.ndarray:
    """(M, 3) refractive index at the vertices of every triangle"""
    values = np.ones(mesh.triangles.shape, dtype=complex)
    for region, index in mesh.region_indices.items():
        mask = mesh.regions == region
        if np.any(mask):
            values[mask] = index(mesh.nodes[mesh.triangles[mask]].reshape(-1, 2)).reshape(-1, 3)
    return values


def edge_lengths(mesh: Mesh, edges: np.ndarray) -> np.ndarray:
    d = mesh.nodes[edges[:, 1]] - mesh.nodes[edges[:, 0]]
    return np.hypot(d[:, 0], d[:, 1])


def interface_mass_matrix(mesh: Mesh) -> sparse.csr_matrix:
    """sum over interface edges of eta L/6 [[2, 1], [1, 2]]"""
    edges = mesh.interface_edges
    if len(edges) == 0:
        return sparse.csr_matrix((mesh.n_nodes, mesh.n_nodes), dtype=complex)
    etas = np.array([mesh.interface_etas[i] for i in mesh.interface_ids], dtype=complex)
    scale = etas * edge_lengths(mesh, edges) / 6.0
    local = scale[:, None, None] * np.array([[2.0, 1.0], [1.0, 2.0]])
    rows = np.repeat(edges[:, :, None], 2, axis=2)
    cols = np.repeat(edges[:, None, :], 2, axis=1)
    return _coo(rows, cols, local, mesh.n_nodes)


def load_vector(mesh: Mesh, integrand, triangles: np.ndarray | None = None) -> np.ndarray:
    """int f phi_j over the selected triangles (degree-4 rule).

    Args:
        mesh: Mesh
        integrand: Callable (points, triangle indices) -> values at the points
        triangles: Triangle indices (default: all)
    """
    tri = np.arange(mesh.n_triangles) if triangles is None else np.asarray(triangles)
    out = np.zeros(mesh.n_nodes, dtype=complex)
    if tri.size == 0:
        return out
    bary, weights = dunavant_rule()
    p = mesh.nodes[mesh.triangles[tri]]
    points = np.einsum("qi,mik->mqk", bary, p)
    values = integrand(points.reshape(-1, 2), np.repeat(tri, len(weights))).reshape(tri.size, len(weights))
    local = np.einsum("mq,q,qi->mi", values, weights, bary) * mesh.areas[tri][:, None]
    np.add.at(out, mesh.triangles[tri].ravel(), local.ravel())
    return out


def edge_load_vector(mesh: Mesh, integrand, order: int = 3) -> np.ndarray:
    """sum over interface edges of int_e eta f phi_j ds (Gauss-Legendre)"""
    out = np.zeros(mesh.n_nodes, dtype=complex)
    edges = mesh.interface_edges
    if len(edges) == 0:
        return out
    x, w = np.polynomial.legendre.leggauss(order)
    s = 0.5 * (x + 1.0)
    a, b = mesh.nodes[edges[:, 0]], mesh.nodes[edges[:, 1]]
    points = a[:, None, :] + s[None, :, None] * (b - a)[:, None, :]
    values = integrand(points.reshape(-1, 2)).reshape(len(edges), order)
    etas = np.array([mesh.interface_etas[i] for i in mesh.interface_ids], dtype=complex)
    scale = 0.5 * edge_lengths(mesh, edges) * etas
    local = np.stack([values @ (w * (1 - s)), values @ (w * s)], axis=1) * scale[:, None]
    np.add.at(out, edges.ravel(), local.ravel())
    return out


def default_dtn_modes(k: float, radius: float, extra: int = 20) -> int:
    """k Rt + extra"""
    return int(math.ceil(k * radius)) + extra


def boundary_fourier_matrix(mesh: Mesh, n_modes: int, order: int = 4) -> tuple[np.ndarray, np.ndarray]:
    """(orders, F) with F[n, j] = int_0^{2pi} phi_j(theta) e^{-in theta} d theta"""
    orders = np.arange(-n_modes, n_modes + 1)
    edges = mesh.boundary_edges
    angles = np.arctan2(mesh.nodes[:, 1], mesh.nodes[:, 0])
    t0 = angles[edges[:, 0]]
    t1 = t0 + np.mod(angles[edges[:, 1]] - t0, 2 * math.pi)
    x, w = np.polynomial.legendre.leggauss(order)
    s = 0.5 * (x + 1.0)
    theta = t0[:, None] + s[None, :] * (t1 - t0)[:, None]
    half = 0.5 * (t1 - t0)[:, None] * w[None, :]
    phase = np.exp(-1j * orders[:, None, None] * theta[None, :, :])
    F = np.zeros((orders.size, mesh.n_nodes), dtype=complex)
    for side, shape in ((0, 1.0 - s), (1, s)):
        contribution = np.sum(phase * (half * shape[None, :])[None, :, :], axis=2)
        np.add.at(F.T, edges[:, side], contribution.T)
    return orders, F


def dtn_matrix(mesh: Mesh, k: float, n_modes: int) -> tuple[sparse.csr_matrix, np.ndarray]:
    """Dense DtN block D_ji = (Rt k / 2 pi) sum_n h_n conj(F_nj) F_ni on boundary nodes.

    Returns:
        (sparse matrix, orders used)
    """
    orders, F = boundary_fourier_matrix(mesh, n_modes)
    nodes = mesh.boundary_nodes()
    Fb = F[:, nodes]
    h = hankel_log_derivative(orders, k * mesh.radius)
    block = (mesh.radius * k / (2 * math.pi)) * (Fb.conj().T * h[None, :]) @ Fb
    rows = np.repeat(nodes[:, None], nodes.size, axis=1)
    cols = np.repeat(nodes[None, :], nodes.size, axis=0)
    return _coo(rows, cols, block, mesh.n_nodes), orders


def dtn_tail_estimate(k: float, radius: float, scatterer_radius: float, n_modes: int) -> float:
    """|J_N(k R_s)| |H_N(k Rt) / H_N(k R_s)| for the first omitted mode N"""
    n = n_modes + 1
    inner = k * scatterer_radius
    j = abs(cyl_bessel("J", n, inner))
    ratio = abs(cyl_bessel("H1", n, k * radius) / cyl_bessel("H1", n, inner))
    return float(j * ratio)
