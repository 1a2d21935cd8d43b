"""Incident waves

Plane waves, Herglotz waves and point sources, each with a pointwise
evaluator and its regular modal expansion about the origin,

    u^i(x) = sum_n c_n J_n(k r) e^{in theta}.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from scipy import special

from ..errors import DomainError
from ..specfun.bessel import cyl_bessel


def _points(points) -> np.ndarray:
    return np.atleast_2d(np.asarray(points, dtype=float))


class IncidentField(ABC):
    """Entire solution of (Delta + k^2) u = 0 (point sources: away from z0)"""

    kind: str
    k: float

    @abstractmethod
    def evaluate(self, points) -> np.ndarray:
        """Values at (N, 2) points"""

    @abstractmethod
    def modal_coefficients(self, order: int) -> tuple[np.ndarray, np.ndarray]:
        """(orders -N..N, c_n)"""

    @abstractmethod
    def to_dict(self) -> dict:
        """Description for reports and manifests"""

    def check_outside(self, radius: float) -> None:
        """Raise DomainError if the modal expansion is invalid on the disk of this radius"""

    def __add__(self, other: "IncidentField") -> "IncidentSuperposition":
        return IncidentSuperposition(((1.0, self), (1.0, other)))

    def __rmul__(self, factor: complex) -> "IncidentSuperposition":
        return IncidentSuperposition(((complex(factor), self),))


def _check_k(k: float) -> float:
    if not (math.isfinite(k) and k > 0):
        raise DomainError(f"wavenumber must be positive, got {k}")
    return float(k)


@dataclass(frozen=True)
class PlaneWave(IncidentField):
    """e^{i k x . d}, d = (cos theta_d, sin theta_d)"""

    k: float
    theta_d: float = 0.0
    kind = "plane"

    def __post_init__(self):
        object.__setattr__(self, "k", _check_k(self.k))

    @property
    def direction(self) -> np.ndarray:
        return np.array([math.cos(self.theta_d), math.sin(self.theta_d)])

    def evaluate(self, points) -> np.ndarray:
        return np.exp(1j * self.k * (_points(points) @ self.direction))

    def modal_coefficients(self, order: int) -> tuple[np.ndarray, np.ndarray]:
        n = np.arange(-order, order + 1)
        return n, (1j**n) * np.exp(-1j * n * self.theta_d)

    def rotated(self, angle: float) -> "PlaneWave":
        return PlaneWave(self.k, self.theta_d + angle)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "k": self.k, "theta_d": self.theta_d}


@dataclass(frozen=True, eq=False)
class HerglotzWave(IncidentField):
    """int_{S^1} e^{i k xi . x} g(xi) ds(xi), trapezoid rule on M equispaced kernel samples"""

    k: float
    kernel: np.ndarray
    kind = "herglotz"

    def __post_init__(self):
        object.__setattr__(self, "k", _check_k(self.k))
        kernel = np.array(self.kernel, dtype=complex).ravel()
        if kernel.size < 1:
            raise DomainError("Herglotz kernel needs at least one sample")
        kernel.setflags(write=False)
        object.__setattr__(self, "kernel", kernel)

    @property
    def nodes(self) -> np.ndarray:
        return 2 * math.pi * np.arange(self.kernel.size) / self.kernel.size

    def evaluate(self, points) -> np.ndarray:
        xi = np.column_stack([np.cos(self.nodes), np.sin(self.nodes)])
        phases = np.exp(1j * self.k * (_points(points) @ xi.T))
        return (2 * math.pi / self.kernel.size) * phases @ self.kernel

    def modal_coefficients(self, order: int) -> tuple[np.ndarray, np.ndarray]:
        n = np.arange(-order, order + 1)
        weights = np.exp(-1j * np.outer(n, self.nodes)) @ self.kernel
        return n, (1j**n) * (2 * math.pi / self.kernel.size) * weights

    def to_dict(self) -> dict:
        return {"kind": self.kind, "k": self.k, "kernel": [[z.real, z.imag] for z in self.kernel]}


@dataclass(frozen=True)
class PointSource(IncidentField):
    """H_0^(1)(k |x - z0|)"""

    k: float
    z0: tuple[float, float]
    kind = "point_source"

    def __post_init__(self):
        object.__setattr__(self, "k", _check_k(self.k))
        object.__setattr__(self, "z0", (float(self.z0[0]), float(self.z0[1])))

    @property
    def radius(self) -> float:
        return math.hypot(*self.z0)

    def evaluate(self, points) -> np.ndarray:
        distance = np.hypot(*(_points(points) - np.asarray(self.z0)).T)
        return np.asarray(cyl_bessel("H1", 0, self.k * distance))

    def modal_coefficients(self, order: int) -> tuple[np.ndarray, np.ndarray]:
        """Graf addition theorem, valid for |x| < |z0|"""
        n = np.arange(-order, order + 1)
        theta0 = math.atan2(self.z0[1], self.z0[0])
        return n, special.hankel1(n, self.k * self.radius) * np.exp(-1j * n * theta0)

    def check_outside(self, radius: float) -> None:
        if self.radius <= radius:
            raise DomainError(
                f"point source at |z0| = {self.radius:.6g} lies inside the scatterer's "
                f"circumdisk (radius {radius:.6g})"
            )

    def to_dict(self) -> dict:
        return {"kind": self.kind, "k": self.k, "z0": list(self.z0)}


@dataclass(frozen=True)
class IncidentSuperposition(IncidentField):
    """sum_j alpha_j u_j^i over incident fields with a common k"""

    terms: tuple[tuple[complex, IncidentField], ...]
    kind = "superposition"

    def __post_init__(self):
        terms = tuple((complex(a), f) for a, f in self.terms)
        if not terms:
            raise DomainError("a superposition needs at least one term")
        ks = {f.k for _, f in terms}
        if len(ks) != 1:
            raise DomainError(f"superposed fields must share k, got {sorted(ks)}")
        object.__setattr__(self, "terms", terms)

    @property
    def k(self) -> float:
        return self.terms[0][1].k

    def evaluate(self, points) -> np.ndarray:
        return sum(a * f.evaluate(points) for a, f in self.terms)

    def modal_coefficients(self, order: int) -> tuple[np.ndarray, np.ndarray]:
        n = np.arange(-order, order + 1)
        return n, sum(a * f.modal_coefficients(order)[1] for a, f in self.terms)

    def check_outside(self, radius: float) -> None:
        for _, f in self.terms:
            f.check_outside(radius)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "k": self.k,
            "terms": [{"weight": [a.real, a.imag], "field": f.to_dict()} for a, f in self.terms],
        }


def incident_field(kind: str, k: float, **params) -> IncidentField:
    """Build an incident field by kind.

    Args:
        kind: "plane" (theta_d), "herglotz" (kernel) or "point_source" (z0)
        k: Wavenumber
        **params: Kind-specific parameters; radius optionally checks that a
            point source lies outside the scatterer's circumdisk

    Returns:
        IncidentField
    """
    radius = params.pop("radius", None)
    if kind == "plane":
        field = PlaneWave(k, float(params.get("theta_d", 0.0)))
    elif kind == "herglotz":
        field = HerglotzWave(k, params.get("kernel", np.ones(64)))
    elif kind == "point_source":
        if "z0" not in params:
            raise DomainError("point_source needs z0")
        field = PointSource(k, tuple(params["z0"]))
    else:
        raise DomainError(f"unknown incident kind {kind!r} (expected plane, herglotz or point_source)")
    if radius is not None:
        field.check_outside(radius)
    return field


def incident_from_dict(data: dict) -> IncidentField:
    """Inverse of IncidentField.to_dict"""
    kind = data.get("kind")
    if kind == "superposition":
        return IncidentSuperposition(
            tuple(
                (complex(*t["weight"]), incident_from_dict(t["field"])) for t in data["terms"]
            )
        )
    params = {key: value for key, value in data.items() if key not in ("kind", "k")}
    if kind == "herglotz" and "kernel" in params:
        params["kernel"] = [complex(*z) if isinstance(z, (list, tuple)) else complex(z) for z in params["kernel"]]
    return incident_field(kind, float(data["k"]), **params)
