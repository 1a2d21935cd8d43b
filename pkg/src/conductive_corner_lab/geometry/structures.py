"""Conductive scatterer data model

Polygonal-nest media (strictly nested convex layers, q_i on
D_i = Sigma_i minus Sigma_{i+1}, eta_i on the boundary of Sigma_i),
polygonal-cell media (convex cells partitioning Omega, one shared eta on
every cell boundary) and concentric disks (the separable oracle case).

Geometric invariants are checked by validate_structure, not at
construction, so that violations can be reported as data.
"""

import hashlib
import json
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..errors import ConfigError, GeometryError
from .polygon import Polygon


def _complex(value) -> complex:
    """Parse [re, im] pairs, numbers or complex values"""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigError(f"complex values are [re, im] pairs, got {value!r}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float, complex, np.number)):
        return complex(value)
    raise ConfigError(f"cannot interpret {value!r} as a complex number")


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


@dataclass(frozen=True)
class LinearIndex:
    """q(x) = q0 + q1*x1 + q2*x2

    Attributes:
        q0: Constant coefficient
        q1: x1 coefficient
        q2: x2 coefficient
    """

    q0: complex = 1.0
    q1: complex = 0.0
    q2: complex = 0.0

    def __post_init__(self):
        for name in ("q0", "q1", "q2"):
            value = complex(getattr(self, name))
            if not np.isfinite(value):
                raise GeometryError(f"refractive index coefficient {name} must be finite")
            object.__setattr__(self, name, value)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        return self.q0 + self.q1 * points[:, 0] + self.q2 * points[:, 1]

    @property
    def is_constant(self) -> bool:
        return self.q1 == 0 and self.q2 == 0

    @property
    def is_trivial(self) -> bool:
        """q == 1 identically"""
        return self.is_constant and self.q0 == 1

    def max_abs_on(self, polygon: Polygon) -> float:
        """max |q| over a polygon (attained at a vertex since q is affine)"""
        return float(np.max(np.abs(self(polygon.vertices))))

    def to_list(self) -> list[list[float]]:
        return [_pair(self.q0), _pair(self.q1), _pair(self.q2)]

    @classmethod
    def parse(cls, value) -> "LinearIndex":
        """From a scalar / [re, im] (constant q) or a list of three coefficients"""
        if isinstance(value, (list, tuple)) and len(value) == 3:
            return cls(*(_complex(v) for v in value))
        return cls(_complex(value))


class _ScattererMixin:
    kind: str

    def to_dict(self) -> dict:
        raise NotImplementedError

    def content_hash(self) -> str:
        """sha256 of the canonical JSON description"""
        text = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    @property
    def is_empty(self) -> bool:
        """q == 1 everywhere and eta == 0 on every interface (no scattering)"""
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class NestScatterer(_ScattererMixin):
    """Polygonal-nest conductive medium

    Attributes:
        layers: Sigma_1 (outermost, = Omega) ... Sigma_N
        indices: q_i on D_i = Sigma_i minus closure(Sigma_{i+1})
        etas: eta_i on the boundary of Sigma_i
    """

    layers: tuple[Polygon, ...]
    indices: tuple[LinearIndex, ...]
    etas: tuple[complex, ...]
    kind = "nest"

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        object.__setattr__(self, "indices", tuple(self.indices))
        object.__setattr__(self, "etas", tuple(complex(e) for e in self.etas))
        if not self.layers:
            raise GeometryError("a nest needs at least one layer")
        if not len(self.layers) == len(self.indices) == len(self.etas):
            raise GeometryError(
                f"nest needs one index and one eta per layer, got {len(self.layers)} layers, "
                f"{len(self.indices)} indices, {len(self.etas)} etas"
            )

    @property
    def outer(self) -> Polygon:
        return self.layers[0]

    @property
    def circumradius(self) -> float:
        return self.outer.circumradius

    @property
    def is_empty(self) -> bool:
        return all(q.is_trivial for q in self.indices) and all(e == 0 for e in self.etas)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "layers": [
                {"vertices": p.to_list(), "q": q.to_list(), "eta": _pair(e)}
                for p, q, e in zip(self.layers, self.indices, self.etas)
            ],
        }


@dataclass(frozen=True, eq=False)
class CellScatterer(_ScattererMixin):
    """Polygonal-cell conductive medium

    Attributes:
        cells: Convex cells Sigma_i partitioning Omega
        eta: Shared conductive constant on every cell boundary
        indices: q_i on Sigma_i
    """

    cells: tuple[Polygon, ...]
    eta: complex
    indices: tuple[LinearIndex, ...]
    kind = "cell"

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        object.__setattr__(self, "indices", tuple(self.indices))
        object.__setattr__(self, "eta", complex(self.eta))
        if not self.cells:
            raise GeometryError("a cell structure needs at least one cell")
        if len(self.cells) != len(self.indices):
            raise GeometryError(
                f"one index per cell required, got {len(self.cells)} cells and "
                f"{len(self.indices)} indices"
            )

    @property
    def circumradius(self) -> float:
        return max(c.circumradius for c in self.cells)

    @property
    def is_empty(self) -> bool:
        return all(q.is_trivial for q in self.indices) and self.eta == 0

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "eta": _pair(self.eta),
            "cells": [{"vertices": c.to_list(), "q": q.to_list()} for c, q in zip(self.cells, self.indices)],
        }


@dataclass(frozen=True, eq=False)
class DiskScatterer(_ScattererMixin):
    """Concentric disks centred at the origin

    Attributes:
        radii: R_1 > ... > R_N > 0
        q_values: Constant q on each annulus (layer i is R_{i+1} < r < R_i)
        etas: eta_i on the circle r = R_i
    """

    radii: tuple[float, ...]
    q_values: tuple[complex, ...]
    etas: tuple[complex, ...]
    kind = "disk"

    def __post_init__(self):
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        object.__setattr__(self, "q_values", tuple(complex(q) for q in self.q_values))
        object.__setattr__(self, "etas", tuple(complex(e) for e in self.etas))
        if not self.radii:
            raise GeometryError("a disk scatterer needs at least one radius")
        if not len(self.radii) == len(self.q_values) == len(self.etas):
            raise GeometryError("one q value and one eta per disk layer required")
        if any(r <= 0 for r in self.radii):
            raise GeometryError("radii must be positive")
        if any(a <= b for a, b in zip(self.radii, self.radii[1:])):
            raise GeometryError(f"radii must be strictly decreasing, got {self.radii}")

    @property
    def n_layers(self) -> int:
        return len(self.radii)

    @property
    def circumradius(self) -> float:
        return self.radii[0]

    @property
    def is_empty(self) -> bool:
        return all(q == 1 for q in self.q_values) and all(e == 0 for e in self.etas)

    @property
    def indices(self) -> tuple[LinearIndex, ...]:
        return tuple(LinearIndex(q) for q in self.q_values)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "layers": [
                {"radius": r, "q": _pair(q), "eta": _pair(e)}
                for r, q, e in zip(self.radii, self.q_values, self.etas)
            ],
        }


Scatterer = Union[NestScatterer, CellScatterer, DiskScatterer]


def scatterer_from_dict(data: dict) -> Scatterer:
    """Build a scatterer from its file description.

    Args:
        data: Mapping with "kind" in {"nest", "cell", "disk"} (see README)

    Returns:
        NestScatterer, CellScatterer or DiskScatterer
    """
    if not isinstance(data, dict):
        raise ConfigError("scatterer description must be a mapping")
    kind = data.get("kind")
    try:
        if kind == "nest":
            layers = data["layers"]
            return NestScatterer(
                layers=[Polygon(layer["vertices"]) for layer in layers],
                indices=[LinearIndex.parse(layer.get("q", 1.0)) for layer in layers],
                etas=[_complex(layer.get("eta", 0.0)) for layer in layers],
            )
        if kind == "cell":
            cells = data["cells"]
            return CellScatterer(
                cells=[Polygon(cell["vertices"]) for cell in cells],
                eta=_complex(data.get("eta", 0.0)),
                indices=[LinearIndex.parse(cell.get("q", 1.0)) for cell in cells],
            )
        if kind == "disk":
            layers = data["layers"]
            return DiskScatterer(
                radii=[float(layer["radius"]) for layer in layers],
                q_values=[_complex(layer.get("q", 1.0)) for layer in layers],
                etas=[_complex(layer.get("eta", 0.0)) for layer in layers],
            )
    except KeyError as e:
        raise ConfigError(f"scatterer description is missing key {e}") from e
    except GeometryError as e:
        raise ConfigError(f"invalid scatterer geometry: {e}") from e
    raise ConfigError(f"unknown scatterer kind {kind!r} (expected nest, cell or disk)")
