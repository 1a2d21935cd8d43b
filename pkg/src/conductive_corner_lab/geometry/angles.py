"""Angle rationality classification

An angle omega = lambda*pi is rational when lambda is. Floating point cannot
decide irrationality, so classification is relative to a denominator bound
Q: the best rational approximation of omega/pi with denominator <= Q
(continued-fraction convergents, via Fraction.limit_denominator) either
lies within tol_angle, or the angle is IrrationalWithin(Q).
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..errors import DomainError
from .polygon import Polygon


@dataclass(frozen=True)
class Rational:
    """omega = (p/q)*pi with gcd(p, q) = 1"""

    p: int
    q: int

    @property
    def value(self) -> float:
        return self.p / self.q

    @property
    def is_convex(self) -> bool:
        return self.p < self.q

    def to_dict(self) -> dict:
        return {"kind": "rational", "p": self.p, "q": self.q}

    def __str__(self) -> str:
        return f"Rational({self.p}/{self.q})"


@dataclass(frozen=True)
class IrrationalWithin:
    """No reduced p/q with q <= Q approximates omega/pi within tol_angle"""

    Q: int
    nearest: Fraction | None = None

    def to_dict(self) -> dict:
        data = {"kind": "irrational_within", "Q": self.Q}
        if self.nearest is not None:
            data["nearest"] = [self.nearest.numerator, self.nearest.denominator]
        return data

    def __str__(self) -> str:
        return f"IrrationalWithin({self.Q})"


AngleClass = Union[Rational, IrrationalWithin]


def best_rational(x: float, Q: int) -> Fraction:
    """Best rational approximation of x with denominator <= Q"""
    return Fraction(x).limit_denominator(Q)


def classify_angle(omega: float, Q: int = 10**6, tol_angle: float = 1e-12) -> AngleClass:
    """Classify omega/pi as rational or irrational up to denominator Q.

    Args:
        omega: Angle in (0, 2pi)
        Q: Denominator search bound (>= 2)
        tol_angle: Acceptance tolerance on |omega/pi - p/q|

    Returns:
        Rational(p, q) or IrrationalWithin(Q)
    """
    if not 0.0 < omega < 2 * math.pi:
        raise DomainError(f"angle must lie in (0, 2pi), got {omega}")
    if Q < 2:
        raise DomainError(f"denominator bound must be >= 2, got {Q}")
    if tol_angle <= 0:
        raise DomainError("tol_angle must be positive")

    lam = omega / math.pi
    approx = best_rational(lam, Q)
    if 0 < approx < 2 and abs(lam - approx.numerator / approx.denominator) < tol_angle:
        return Rational(approx.numerator, approx.denominator)
    return IrrationalWithin(Q, nearest=approx)


def polygon_angle_classes(
    polygon: Polygon,
    Q: int = 10**6,
    tol_angle: float = 1e-12,
) -> list[AngleClass]:
    """Classify every interior angle of a polygon"""
    return [classify_angle(a, Q, tol_angle) for a in polygon.interior_angles()]


def is_irrational_polygon(polygon: Polygon, Q: int = 10**6, tol_angle: float = 1e-12) -> bool:
    """All interior angles IrrationalWithin(Q)"""
    return all(isinstance(c, IrrationalWithin) for c in polygon_angle_classes(polygon, Q, tol_angle))


def convex_irrational_vertices(
    polygon: Polygon,
    Q: int = 10**6,
    tol_angle: float = 1e-12,
) -> list[int]:
    """Indices of vertices whose interior angle is lambda*pi, lambda in (0,1) irrational"""
    classes = polygon_angle_classes(polygon, Q, tol_angle)
    angles = polygon.interior_angles()
    return [
        i
        for i, (c, a) in enumerate(zip(classes, angles))
        if isinstance(c, IrrationalWithin) and a < math.pi
    ]


def is_convex_irrational(polygon: Polygon, Q: int = 10**6, tol_angle: float = 1e-12) -> bool:
    """True when the polygon has at least one convex irrational corner"""
    return bool(convex_irrational_vertices(polygon, Q, tol_angle))
