"""Near-to-far transformation on a circle

Outside the scatterer u^s is radiating, so on a circle |y| = rho

    u_inf(x_hat) = C int_{|y|=rho} [u^s(y) d_nu e^{-ik x_hat.y} - d_nu u^s(y) e^{-ik x_hat.y}] ds(y),
    C = e^{i pi/4} / sqrt(8 pi k),

from the large-argument form of the fundamental solution (i/4) H_0(k|x-y|).
u^s is sampled on the circle; its normal derivative follows mode by mode
from the Hankel log-derivative, d_r u_n = k h_n(k rho) u_n.
"""

import math

import numpy as np

from ...errors import DomainError
from ...specfun.bessel import hankel_log_derivative
from ..farfield import FarFieldPattern, angle_grid
from .solver import FemSolution

MIN_SAMPLES = 256
EXTRA_SAMPLE_MODES = 30


def sample_count(k: float, radius: float) -> int:
    """Power of two >= max(256, 2 (k rho + 30))"""
    needed = max(MIN_SAMPLES, 2 * int(math.ceil(k * radius + EXTRA_SAMPLE_MODES)))
    return 1 << (needed - 1).bit_length()


def circle_representation(k: float, radius: float, samples: np.ndarray, directions=360) -> FarFieldPattern:
    """Far field of a radiating field from its values at M equispaced points on |y| = radius"""
    samples = np.asarray(samples, dtype=complex)
    m = samples.size
    psi = 2 * math.pi * np.arange(m) / m
    orders = np.fft.fftfreq(m, d=1.0 / m).astype(int)
    modes = np.fft.fft(samples)
    # higher modes of a radiating field are below the sampling error
    kept = np.abs(orders) <= min(m // 2 - 1, int(math.ceil(k * radius)) + EXTRA_SAMPLE_MODES)
    modes[~kept] = 0.0
    ratio = np.zeros(m, dtype=complex)
    ratio[kept] = hankel_log_derivative(orders[kept], k * radius)
    normal_derivative = np.fft.ifft(k * ratio * modes)

    theta = angle_grid(directions)
    directions_xy = np.column_stack([np.cos(theta), np.sin(theta)])
    normals = np.column_stack([np.cos(psi), np.sin(psi)])
    points = radius * normals
    phase = np.exp(-1j * k * directions_xy @ points.T)
    d_phase = -1j * k * (directions_xy @ normals.T) * phase
    integrand = samples[None, :] * d_phase - normal_derivative[None, :] * phase
    weight = 2 * math.pi * radius / m
    constant = np.exp(0.25j * math.pi) / math.sqrt(8 * math.pi * k)
    return FarFieldPattern(theta, constant * weight * integrand.sum(axis=1), k)


def near_to_far(sol: FemSolution, circle_radius: float, directions=360) -> FarFieldPattern:
    """Far-field pattern of a finite-element solution.

    Args:
        sol: FemSolution
        circle_radius: Extraction radius, strictly between the scatterer and Rt
        directions: Number of uniform directions or an angle array

    Returns:
        FarFieldPattern
    """
    mesh = sol.mesh
    if not mesh.scatterer_radius < circle_radius < mesh.radius:
        raise DomainError(
            f"extraction radius {circle_radius} must lie strictly between the scatterer "
            f"radius {mesh.scatterer_radius} and Rt = {mesh.radius}"
        )
    m = sample_count(sol.k, circle_radius)
    psi = 2 * math.pi * np.arange(m) / m
    points = circle_radius * np.column_stack([np.cos(psi), np.sin(psi)])
    return circle_representation(sol.k, circle_radius, sol.evaluate(points), directions)
