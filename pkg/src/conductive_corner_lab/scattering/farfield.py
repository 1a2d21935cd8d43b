"""Far-field patterns on the unit circle

u^s(x) = e^{ik|x|}/|x|^{1/2} (u_inf(x_hat) + O(|x|^{-1/2})). Patterns are
sampled on an angle grid; L2(S^1) norms use the trapezoid rule, which is
spectrally accurate for the uniform periodic grids produced here.
"""

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import ConfigError, DomainError


def angle_grid(directions) -> np.ndarray:
    """M -> uniform grid 2 pi j / M; arrays are passed through"""
    if np.isscalar(directions):
        count = int(directions)
        if count < 1:
            raise DomainError(f"need at least one far-field direction, got {count}")
        return 2 * math.pi * np.arange(count) / count
    return np.asarray(directions, dtype=float).ravel()


def hankel_far_constant(k: float) -> complex:
    """sqrt(2/(pi k)) e^{-i pi/4}, from H_n(kr) ~ sqrt(2/(pi k r)) e^{i(kr - n pi/2 - pi/4)}"""
    return math.sqrt(2.0 / (math.pi * k)) * np.exp(-0.25j * math.pi)


@dataclass(frozen=True, eq=False)
class FarFieldPattern:
    """Sampled far-field pattern

    Attributes:
        theta: Observation angles
        values: u_inf(theta)
        k: Wavenumber
    """

    theta: np.ndarray
    values: np.ndarray
    k: float

    def __post_init__(self):
        theta = np.array(self.theta, dtype=float).ravel()
        values = np.array(self.values, dtype=complex).ravel()
        if theta.shape != values.shape:
            raise DomainError(f"{theta.size} angles but {values.size} far-field values")
        theta.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.theta.size

    @property
    def is_uniform(self) -> bool:
        """theta = theta_0 + 2 pi j / M"""
        if self.theta.size < 2:
            return False
        expected = self.theta[0] + 2 * math.pi * np.arange(self.theta.size) / self.theta.size
        return bool(np.allclose(self.theta, expected, rtol=0, atol=1e-12))

    @property
    def l2_norm(self) -> float:
        """||u_inf||_{L2(S^1)}"""
        return _l2(self.theta, self.values)

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    def fourier_coefficients(self) -> tuple[np.ndarray, np.ndarray]:
        """(orders, f_n) with u_inf(theta) = sum_n f_n e^{in theta} on a uniform grid"""
        if not self.is_uniform:
            raise DomainError("Fourier coefficients need a uniform angle grid")
        m = self.theta.size
        orders = np.fft.fftfreq(m, d=1.0 / m).astype(int)
        coeffs = np.fft.fft(self.values) / m * np.exp(-1j * orders * self.theta[0])
        order = np.argsort(orders, kind="stable")
        return orders[order], coeffs[order]

    def difference_norm(self, other: "FarFieldPattern") -> float:
        """||u_inf - other||_{L2(S^1)} on the shared grid"""
        if self.theta.shape != other.theta.shape or not np.allclose(self.theta, other.theta, atol=1e-12):
            raise DomainError("far-field patterns live on different angle grids")
        return _l2(self.theta, self.values - other.values)

    def relative_error(self, reference: "FarFieldPattern") -> float:
        """difference_norm / ||reference||"""
        scale = reference.l2_norm
        if scale == 0:
            return self.l2_norm
        return self.difference_norm(reference) / scale

    def rotated(self, angle: float) -> "FarFieldPattern":
        """Same values, angles shifted by angle"""
        return FarFieldPattern(self.theta + angle, self.values, self.k)

    def to_csv(self, path: str | Path) -> Path:
        """Columns theta, re, im (repr floats, bit-stable)"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["theta", "re", "im"])
            for t, z in zip(self.theta, self.values):
                writer.writerow([repr(float(t)), repr(float(z.real)), repr(float(z.imag))])
        return path

    @classmethod
    def from_csv(cls, path: str | Path, k: float) -> "FarFieldPattern":
        path = Path(path)
        try:
            with open(path, newline="", encoding="utf-8") as f:
                rows = list(csv.DictReader(f))
            theta = [float(r["theta"]) for r in rows]
            values = [complex(float(r["re"]), float(r["im"])) for r in rows]
        except (OSError, KeyError, ValueError) as e:
            raise ConfigError(f"cannot read far-field CSV {path}: {e}") from e
        return cls(np.array(theta), np.array(values), k)

    def to_dict(self) -> dict:
        return {"k": self.k, "directions": int(self.theta.size), "l2_norm": self.l2_norm}

    @classmethod
    def zeros(cls, directions, k: float) -> "FarFieldPattern":
        theta = angle_grid(directions)
        return cls(theta, np.zeros_like(theta, dtype=complex), k)


def _l2(theta: np.ndarray, values: np.ndarray) -> float:
    if theta.size == 0:
        return 0.0
    # periodic trapezoid weights
    spacing = np.diff(np.append(theta, theta[0] + 2 * math.pi))
    weights = 0.5 * (spacing + np.roll(spacing, 1))
    return float(math.sqrt(np.sum(weights * np.abs(values) ** 2)))


def far_field_from_modes(orders, coeffs, k: float, directions) -> FarFieldPattern:
    """u_inf(theta) = sqrt(2/(pi k)) e^{-i pi/4} sum_n b_n (-i)^n e^{in theta}"""
    theta = angle_grid(directions)
    orders = np.asarray(orders)
    modal = np.asarray(coeffs, dtype=complex) * (-1j) ** orders
    values = hankel_far_constant(k) * (np.exp(1j * np.outer(theta, orders)) @ modal)
    return FarFieldPattern(theta, values, k)
