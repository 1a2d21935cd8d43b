"""Fourier-Bessel fields

v(r, theta) = sum_{n>=0} (a_n e^{in theta} + b_n e^{-in theta}) J_n(kappa r),
the local expansion of a solution of (Delta + kappa^2) v = 0 around a
corner vertex. Orders n >= 1 are one-to-one with the two-sided modal
coefficients c_n = a_n, c_{-n} = b_n; order 0 only carries a_0 + b_0, and
fitted fields use b_0 = 0.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from ..errors import DomainError, IllConditionedFitError
from .bessel import bessel_upper_bound

DIVISOR_TOL = 1e-8
EXTRA_ORDERS = 15


@dataclass(frozen=True, eq=False)
class FourierBesselField:
    """Truncated Fourier-Bessel expansion

    Attributes:
        kappa: Real wavenumber
        a: a_0..a_N (complex)
        b: b_0..b_N (complex)
    """

    kappa: float
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=complex).ravel()
        b = np.array(self.b, dtype=complex).ravel()
        if a.shape != b.shape or a.size == 0:
            raise DomainError(f"a and b need the same nonzero length, got {a.size} and {b.size}")
        if not np.all(np.isfinite(a)) or not np.all(np.isfinite(b)):
            raise DomainError("Fourier-Bessel coefficients must be finite")
        if not self.kappa > 0:
            raise DomainError(f"kappa must be positive, got {self.kappa}")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "kappa", float(self.kappa))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def order(self) -> int:
        """Truncation order N"""
        return self.a.size - 1

    @property
    def coeffs(self) -> np.ndarray:
        """(N+1, 2) array of (a_n, b_n) pairs"""
        return np.column_stack([self.a, self.b])

    @property
    def origin_value(self) -> complex:
        return complex(self.a[0] + self.b[0])

    def coefficient(self, n: int) -> tuple[complex, complex]:
        """(a_n, b_n), zero beyond the stored order"""
        if n < 0:
            raise DomainError(f"order must be non-negative, got {n}")
        if n > self.order:
            return 0j, 0j
        return complex(self.a[n]), complex(self.b[n])

    def truncated(self, order: int) -> "FourierBesselField":
        """Keep orders 0..order (zero-padded if order > N)"""
        a = np.zeros(order + 1, dtype=complex)
        b = np.zeros(order + 1, dtype=complex)
        m = min(order, self.order) + 1
        a[:m], b[:m] = self.a[:m], self.b[:m]
        return FourierBesselField(self.kappa, a, b)

    def scaled(self, factor: complex) -> "FourierBesselField":
        return FourierBesselField(self.kappa, factor * self.a, factor * self.b)

    def tail_bound(self, r) -> np.ndarray:
        """Bound on the omitted orders n > N at radius r.

        Assumes |a_n|, |b_n| for n > N are bounded by the largest stored
        coefficient and uses |J_n(x)| <= (x/2)^n / n!. Infinite where the
        geometric majorant diverges (kappa r / 2 >= N + 2).
        """
        x = self.kappa * np.asarray(r, dtype=float)
        size = 2 * float(max(np.max(np.abs(self.a)), np.max(np.abs(self.b))))
        n = self.order + 1
        ratio = x / (2 * (n + 1))
        with np.errstate(divide="ignore"):
            bound = size * bessel_upper_bound(n, x) / np.where(ratio < 1, 1 - ratio, 0.0)
        return np.where(ratio < 1, bound, np.inf)

    def to_modes(self) -> tuple[np.ndarray, np.ndarray]:
        """Two-sided modal coefficients (orders -N..N, c)"""
        N = self.order
        orders = np.arange(-N, N + 1)
        c = np.concatenate([self.b[:0:-1], [self.a[0] + self.b[0]], self.a[1:]])
        return orders, c

    @classmethod
    def from_modes(cls, kappa: float, orders, values) -> "FourierBesselField":
        """Inverse of to_modes (b_0 = 0); orders may be any subset of Z"""
        orders = np.asarray(orders, dtype=int)
        values = np.asarray(values, dtype=complex)
        N = int(np.max(np.abs(orders))) if orders.size else 0
        a = np.zeros(N + 1, dtype=complex)
        b = np.zeros(N + 1, dtype=complex)
        for n, c in zip(orders, values):
            if n >= 0:
                a[n] += c
            else:
                b[-n] += c
        return cls(kappa, a, b)

    @classmethod
    def single(cls, kappa: float, n: int, a: complex = 0.0, b: complex = 0.0) -> "FourierBesselField":
        """Field with one nonzero order"""
        field = np.zeros((2, n + 1), dtype=complex)
        field[0, n], field[1, n] = a, b
        return cls(kappa, field[0], field[1])

    def to_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "a": [[z.real, z.imag] for z in self.a],
            "b": [[z.real, z.imag] for z in self.b],
        }


def plane_wave_field(kappa: float, theta_d: float, order: int) -> FourierBesselField:
    """Jacobi-Anger coefficients of e^{i kappa x.d}, d = (cos theta_d, sin theta_d).

    a_n = i^n e^{-in theta_d}; b_n = i^n e^{in theta_d} for n >= 1; b_0 = 0.
    """
    n = np.arange(order + 1)
    a = (1j**n) * np.exp(-1j * n * theta_d)
    b = (1j**n) * np.exp(1j * n * theta_d)
    b[0] = 0.0
    return FourierBesselField(kappa, a, b)


def fb_eval(field: FourierBesselField, r, theta, return_bound: bool = False):
    """Evaluate a Fourier-Bessel field at polar points.

    Args:
        field: FourierBesselField
        r: Radii (>= 0), scalar or array
        theta: Polar angles, broadcast against r
        return_bound: Also return the truncation tail bound per point

    Returns:
        Complex values (scalar for scalar input), optionally with tail bounds
    """
    r, theta = np.broadcast_arrays(np.asarray(r, dtype=float), np.asarray(theta, dtype=float))
    if np.any(r < 0):
        raise DomainError("radii must be non-negative")
    n = np.arange(field.order + 1)[:, None]
    rr, tt = r.ravel()[None, :], theta.ravel()[None, :]
    radial = special.jv(n, field.kappa * rr)
    angular = field.a[:, None] * np.exp(1j * n * tt) + field.b[:, None] * np.exp(-1j * n * tt)
    values = np.sum(angular * radial, axis=0).reshape(r.shape)
    if values.ndim == 0:
        values = complex(values)
    if return_bound:
        return values, field.tail_bound(r)
    return values


def default_order(kappa: float, radius: float) -> int:
    """ceil(kappa r) + 15"""
    return math.ceil(kappa * radius) + EXTRA_ORDERS


def fb_fit(
    samples,
    kappa: float,
    radius: float,
    order: int | None = None,
    divisor_tol: float = DIVISOR_TOL,
) -> FourierBesselField:
    """Fit a Fourier-Bessel field to equispaced samples on a circle.

    Sample j sits at theta_j = 2*pi*j/M. Mode m of the DFT is divided by
    J_|m|(kappa r_c).

    Args:
        samples: M complex samples of v on the circle of radius r_c
        kappa: Wavenumber
        radius: Circle radius r_c
        order: Truncation order N (default ceil(kappa r_c) + 15, stopping
            early where J_n has decayed below divisor_tol beyond n > kappa r_c)
        divisor_tol: Smallest admissible |J_n(kappa r_c)|

    Returns:
        FourierBesselField with b_0 = 0

    Raises:
        IllConditionedFitError: |J_n(kappa r_c)| < divisor_tol for a kept order n
        DomainError: fewer than 4N samples
    """
    samples = np.asarray(samples, dtype=complex).ravel()
    M = samples.size
    x = kappa * radius
    if radius <= 0 or kappa <= 0:
        raise DomainError("kappa and the circle radius must be positive")

    explicit = order is not None
    if explicit:
        if order < 0:
            raise DomainError(f"order must be non-negative, got {order}")
        if M < 4 * max(order, 1):
            raise DomainError(f"{M} samples are fewer than 4*N = {4 * order}")
    else:
        order = min(default_order(kappa, radius), max(M // 4, 1))

    divisors = special.jv(np.arange(order + 1), x)
    for n, value in enumerate(divisors):
        if abs(value) < divisor_tol:
            if not explicit and n > x:
                order = n - 1
                divisors = divisors[:n]
                break
            raise IllConditionedFitError(n, complex(value))

    spectrum = np.fft.fft(samples) / M
    n = np.arange(order + 1)
    a = spectrum[n] / divisors
    b = spectrum[(-n) % M] / divisors
    b[0] = 0.0
    return FourierBesselField(kappa, a, b)
