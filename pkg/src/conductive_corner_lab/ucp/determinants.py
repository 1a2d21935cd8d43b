"""Determinant conditions of the corner unique-continuation arguments

Closed forms and the explicitly assembled matrices behind them:

- induction step ell: det = 2(cos beta - cos((2 ell + 3) beta))
  = 4 sin((ell+1) beta) sin((ell+2) beta), zero exactly on
  {alpha pi/(ell+1)} U {sigma pi/(ell+2)}
- gradient cases: det M1 = -det M2 = -2 sin^2(beta) cos(beta)
- parameter recovery: the bracket matrix of the linear-index moments
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from ..errors import DomainError


def _check_beta(beta: float) -> None:
    if not 0.0 < beta < math.pi:
        raise DomainError(f"opening angle must lie in (0, pi), got {beta}")


def det_step(beta, ell: int):
    """2(cos beta - cos((2 ell + 3) beta)); vectorized over beta"""
    if ell < 0:
        raise DomainError(f"induction step must be >= 0, got {ell}")
    beta = np.asarray(beta, dtype=float)
    value = 2.0 * (np.cos(beta) - np.cos((2 * ell + 3) * beta))
    return float(value) if value.ndim == 0 else value


def step_matrix(theta_m: float, theta_M: float, ell: int) -> np.ndarray:
    """Row-normalized step matrix (A for ell = 0, B otherwise).

    Rows come from the PLUS and MINUS phases, with the e^{-+i(ell+2) phi}
    factors removed; columns multiply a_{ell+1} and b_{ell+1}.
    """
    angles = np.array([theta_m, theta_M])
    k = 2 * ell + 3
    return np.array(
        [
            [np.sum(np.exp(-1j * angles)), np.sum(np.exp(-1j * k * angles))],
            [np.sum(np.exp(1j * k * angles)), np.sum(np.exp(1j * angles))],
        ]
    )


@dataclass(frozen=True)
class SingularAngle:
    """beta = numerator * pi / denominator from one of the two families"""

    numerator: int
    denominator: int
    family: str  # "ell+1" or "ell+2"

    @property
    def beta(self) -> float:
        return self.numerator * math.pi / self.denominator

    def to_dict(self) -> dict:
        return {
            "numerator": self.numerator,
            "denominator": self.denominator,
            "family": self.family,
            "beta": self.beta,
        }

    def __str__(self) -> str:
        return f"{self.numerator}pi/{self.denominator} ({self.family} family)"


def singular_angles(ell: int) -> list[SingularAngle]:
    """Enumerated zeros of det_step(., ell) in (0, pi), sorted by beta.

    The two families never share an angle since gcd(ell+1, ell+2) = 1.
    """
    if ell < 0:
        raise DomainError(f"induction step must be >= 0, got {ell}")
    zeros = [SingularAngle(a, ell + 1, "ell+1") for a in range(1, ell + 1)]
    zeros += [SingularAngle(s, ell + 2, "ell+2") for s in range(1, ell + 2)]
    return sorted(zeros, key=lambda z: (z.beta, z.family))


def singular_witness(beta: float, ell: int, tol: float = 1e-9) -> SingularAngle | None:
    """The enumerated zero of step ell within tol of beta, if any"""
    best = min(singular_angles(ell), key=lambda z: abs(z.beta - beta), default=None)
    if best is not None and abs(best.beta - beta) <= tol:
        return best
    return None


def det_step_zeros(ell: int, grid_size: int = 100_000) -> np.ndarray:
    """Roots of det_step(., ell) in (0, pi) by sign changes on a grid plus brentq"""
    grid = np.linspace(0.0, math.pi, grid_size + 1)[1:-1]
    values = det_step(grid, ell)
    roots = list(grid[values == 0.0])
    changes = np.nonzero(values[:-1] * values[1:] < 0)[0]
    for i in changes:
        roots.append(optimize.brentq(det_step, grid[i], grid[i + 1], args=(ell,), xtol=1e-15, rtol=4e-16))
    return np.sort(np.array(roots))


def gradient_matrices(theta_m: float, theta_M: float) -> tuple[np.ndarray, np.ndarray]:
    """M1 and M2 of the two-partial-derivative case (M2 is M1 with rows swapped)"""
    cm, sm = math.cos(theta_m), math.sin(theta_m)
    cM, sM = math.cos(theta_M), math.sin(theta_M)
    c2m, s2m = math.cos(2 * theta_m), math.sin(2 * theta_m)
    c2M, s2M = math.cos(2 * theta_M), math.sin(2 * theta_M)
    m1 = np.array(
        [
            [cM * c2m + cm * c2M, sM * c2m + sm * c2M],
            [cM * s2m + cm * s2M, sM * s2m + sm * s2M],
        ]
    )
    return m1, m1[::-1].copy()


def det_gradient(beta: float) -> tuple[float, float]:
    """(det M1, det M2) = (-2 sin^2 beta cos beta, 2 sin^2 beta cos beta)"""
    _check_beta(beta)
    det_m1 = -2.0 * math.sin(beta) ** 2 * math.cos(beta)
    return det_m1, -det_m1


def shape_case_factors(theta_m: float, theta_M: float) -> tuple[float, float, float]:
    """Nonvanishing factors of the single-derivative cases.

    |e^{i theta_m} + e^{i theta_M}|,
    |cos theta_M e^{-2i theta_m} + cos theta_m e^{-2i theta_M}|,
    |sin theta_M e^{-2i theta_m} + sin theta_m e^{-2i theta_M}|
    """
    em, eM = np.exp(-2j * theta_m), np.exp(-2j * theta_M)
    return (
        float(abs(np.exp(1j * theta_m) + np.exp(1j * theta_M))),
        float(abs(math.cos(theta_M) * em + math.cos(theta_m) * eM)),
        float(abs(math.sin(theta_M) * em + math.sin(theta_m) * eM)),
    )


def _bracket_x1(theta: float) -> complex:
    return complex((-math.sin(theta) + 3j * math.cos(theta)) * np.exp(-3j * theta))


def _bracket_x2(theta: float) -> complex:
    return complex(2 * np.exp(-2j * theta) - np.exp(-4j * theta))


def param_recovery_matrix(theta_m: float, theta_M: float) -> np.ndarray:
    """Bracket matrix of the x1/x2 moments; PLUS row first, MINUS row conjugate"""
    f1 = _bracket_x1(theta_M) - _bracket_x1(theta_m)
    f2 = _bracket_x2(theta_M) - _bracket_x2(theta_m)
    return np.array([[f1, f2], [f1.conjugate(), f2.conjugate()]])


def det_param_recovery(beta: float) -> complex:
    """-4 (cos 2 beta - 1)^2 i.

    The assembled param_recovery_matrix has determinant
    8 i (cos 2 beta - 1)^2, i.e. -2 times this value; both vanish only at
    beta = 0 or pi.
    """
    _check_beta(beta)
    return -4.0 * (math.cos(2 * beta) - 1.0) ** 2 * 1j


def param_recovery_identity(beta: float) -> tuple[float, float]:
    """(20 sin 3b sin b + 12 cos 3b cos b - 12, -8 (cos 2b - 1)^2); the two agree"""
    lhs = 20 * math.sin(3 * beta) * math.sin(beta) + 12 * math.cos(3 * beta) * math.cos(beta) - 12
    return lhs, -8.0 * (math.cos(2 * beta) - 1.0) ** 2
