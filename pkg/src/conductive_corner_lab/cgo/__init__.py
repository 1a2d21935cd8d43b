"""CGO phases, moment integrals and decay fits"""

from .params import CGOParams, PerpChoice, cgo_phase, pick_direction, ray_phase_rate
from .moments import (
    MONOMIALS,
    MomentValue,
    angular_bracket,
    area_integral,
    boundary_corner_integral,
    sector_area_integral,
    segment_moment,
)
from .decay import AsymptoticFit, DecaySweep, decay_sweep, fit_decay, geometric_grid

__all__ = [
    "CGOParams",
    "PerpChoice",
    "cgo_phase",
    "pick_direction",
    "ray_phase_rate",
    "MONOMIALS",
    "MomentValue",
    "angular_bracket",
    "area_integral",
    "boundary_corner_integral",
    "sector_area_integral",
    "segment_moment",
    "AsymptoticFit",
    "DecaySweep",
    "decay_sweep",
    "fit_decay",
    "geometric_grid",
]
