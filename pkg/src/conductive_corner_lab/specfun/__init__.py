"""Special functions and Fourier-Bessel fields"""

from .bessel import (
    KINDS,
    bessel_series,
    bessel_upper_bound,
    cyl_bessel,
    cyl_bessel_derivative,
    hankel_log_derivative,
)
from .gamma import gamma_function, lower_incomplete_gamma, upper_incomplete_gamma
from .fourier_bessel import (
    FourierBesselField,
    default_order,
    fb_eval,
    fb_fit,
    plane_wave_field,
)

__all__ = [
    "KINDS",
    "bessel_series",
    "bessel_upper_bound",
    "cyl_bessel",
    "cyl_bessel_derivative",
    "hankel_log_derivative",
    "gamma_function",
    "lower_incomplete_gamma",
    "upper_incomplete_gamma",
    "FourierBesselField",
    "default_order",
    "fb_eval",
    "fb_fit",
    "plane_wave_field",
]
