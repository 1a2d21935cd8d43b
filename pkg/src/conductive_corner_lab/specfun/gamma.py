"""Gamma and incomplete Gamma functions for complex arguments

scipy's gammainc only accepts real arguments; the moment integrals of the
CGO analysis need gamma(s, z) for complex z with Re z > 0. The lower
function comes from its power series when |z| < s + 1 and otherwise from
the continued fraction of Gamma(s, z) (modified Lentz), as in the usual
Numerical Recipes split.
"""

import cmath

import numpy as np
from scipy import special

from ..errors import DomainError, SpecialFunctionError

EPS = 1e-16
TINY = 1e-300


def gamma_function(s: float) -> float:
    """Gamma(s) for real s > 0"""
    if s <= 0:
        raise DomainError(f"Gamma is only provided for s > 0, got {s}")
    value = float(special.gamma(s))
    if not np.isfinite(value):
        raise SpecialFunctionError(f"Gamma({s}) overflows")
    return value


def _prefactor(s: float, z: complex) -> complex:
    """z^s e^{-z} (principal branch)"""
    return cmath.exp(s * cmath.log(z) - z)


def _lower_series(s: float, z: complex, max_terms: int) -> complex:
    term = 1.0 / s
    total = term
    denom = s
    for _ in range(max_terms):
        denom += 1.0
        term *= z / denom
        total += term
        if abs(term) < abs(total) * EPS:
            return _prefactor(s, z) * total
    raise SpecialFunctionError(f"series for gamma({s}, {z}) did not converge")


def _upper_continued_fraction(s: float, z: complex, max_terms: int) -> complex:
    b = z + 1.0 - s
    c = 1.0 / TINY
    d = 1.0 / b
    h = d
    for i in range(1, max_terms + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < TINY:
            d = TINY
        c = b + an / c
        if abs(c) < TINY:
            c = TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < EPS:
            return _prefactor(s, z) * h
    raise SpecialFunctionError(f"continued fraction for Gamma({s}, {z}) did not converge")


def upper_incomplete_gamma(s: float, z: complex, max_terms: int = 2000) -> complex:
    """Gamma(s, z) = int_z^inf t^{s-1} e^{-t} dt for s > 0, z off the negative real axis"""
    if s <= 0:
        raise DomainError(f"s must be positive, got {s}")
    z = complex(z)
    if z == 0:
        return complex(gamma_function(s))
    if abs(z) < s + 1:
        return gamma_function(s) - _lower_series(s, z, max_terms)
    return _upper_continued_fraction(s, z, max_terms)


def lower_incomplete_gamma(s: float, z: complex, max_terms: int = 2000) -> complex:
    """Lower incomplete Gamma function.

    gamma(s, z) = int_0^z t^{s-1} e^{-t} dt, so that
    int_0^zeta r^s e^{-mu r} dr = gamma(s + 1, mu zeta) / mu^{s + 1}.

    Args:
        s: Real order, s > 0
        z: Complex argument
        max_terms: Iteration cap for series and continued fraction

    Returns:
        gamma(s, z) as a complex number
    """
    if s <= 0:
        raise DomainError(f"s must be positive, got {s}")
    z = complex(z)
    if z == 0:
        return 0j
    if abs(z) < s + 1:
        return _lower_series(s, z, max_terms)
    return gamma_function(s) - _upper_continued_fraction(s, z, max_terms)
