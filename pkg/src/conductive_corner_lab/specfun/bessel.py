"""Cylinder functions

Thin checked wrappers around scipy.special for integer orders:
J_n, Y_n, H_n^(1) and their derivatives. Non-finite results are reported
as SpecialFunctionError instead of propagating inf/nan into linear
systems.
"""

import math

import numpy as np
from scipy import special

from ..errors import DomainError, SpecialFunctionError

KINDS = ("J", "Y", "H1")

_VALUE = {"J": special.jv, "Y": special.yv, "H1": special.hankel1}
_DERIVATIVE = {"J": special.jvp, "Y": special.yvp, "H1": special.h1vp}


def _normalize_kind(kind: str) -> str:
    key = str(kind).upper()
    if key not in KINDS:
        raise DomainError(f"unknown cylinder function kind {kind!r} (expected one of {KINDS})")
    return key


def _finite_or_raise(values, kind: str, n, z) -> np.ndarray:
    values = np.asarray(values, dtype=complex)
    if not np.all(np.isfinite(values)):
        bad = ~np.isfinite(values)
        orders = np.broadcast_to(np.asarray(n), values.shape)[bad]
        args = np.broadcast_to(np.asarray(z), values.shape)[bad]
        raise SpecialFunctionError(
            f"{kind}_n(z) overflowed or is undefined at n={orders.ravel()[0]}, z={args.ravel()[0]}"
        )
    return values


def _check_singular(kind: str, z) -> None:
    if kind != "J" and np.any(np.asarray(z) == 0):
        raise SpecialFunctionError(f"{kind}_n is singular at z = 0")


def cyl_bessel(kind: str, n, z):
    """Cylinder function of integer order.

    Args:
        kind: "J", "Y" or "H1"
        n: Integer order (scalar or array, broadcast against z)
        z: Complex argument (scalar or array)

    Returns:
        Complex value(s); a Python complex for scalar input
    """
    kind = _normalize_kind(kind)
    _check_singular(kind, z)
    values = _finite_or_raise(_VALUE[kind](n, z), kind, n, z)
    return complex(values) if values.ndim == 0 else values


def cyl_bessel_derivative(kind: str, n, z):
    """d/dz of cyl_bessel(kind, n, z)"""
    kind = _normalize_kind(kind)
    _check_singular(kind, z)
    values = _finite_or_raise(_DERIVATIVE[kind](n, z, 1), kind, n, z)
    return complex(values) if values.ndim == 0 else values


def hankel_log_derivative(n, z):
    """H_n'(z) / H_n(z) from H_n' = H_{n-1} - (n/z) H_n"""
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise SpecialFunctionError("H1_n is singular at z = 0")
    h = _finite_or_raise(special.hankel1(n, z), "H1", n, z)
    h_prev = _finite_or_raise(special.hankel1(np.asarray(n) - 1, z), "H1", n, z)
    ratio = h_prev / h - np.asarray(n) / z
    return complex(ratio) if ratio.ndim == 0 else ratio


def bessel_series(n: int, z: complex, tol: float = 1e-17, max_terms: int = 500) -> complex:
    """J_n(z) = sum_p (-1)^p (z/2)^(2p+n) / (p! (n+p)!), summed directly.

    Independent reference for small |z|; cancellation makes it useless
    once |z| grows beyond ~12.
    """
    if n < 0:
        return (-1) ** n * bessel_series(-n, z, tol, max_terms)
    half = complex(z) / 2
    term = complex(1.0)
    for j in range(1, n + 1):
        term *= half / j
    total = term
    step = -half * half
    for p in range(1, max_terms):
        term *= step / (p * (n + p))
        total += term
        if abs(term) <= tol * max(abs(total), math.ulp(1.0)):
            return total
    raise SpecialFunctionError(f"power series for J_{n}({z}) did not converge in {max_terms} terms")


def bessel_upper_bound(n, x):
    """|J_n(x)| <= (|x|/2)^n / n! for real x and n >= 0"""
    n = np.asarray(n)
    half = np.abs(np.asarray(x, dtype=float)) / 2
    return np.exp(n * np.log(np.maximum(half, 1e-300)) - special.gammaln(n + 1))
