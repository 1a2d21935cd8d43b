"""Finite-element solver for polygonal and disk conductive media"""

from .assembly import dtn_matrix, dtn_tail_estimate, stiffness_matrix, weighted_mass_matrix
from .mesh import Mesh, check_resolution, graded_parameters, mesh_scatterer
from .near_to_far import circle_representation, near_to_far
from .solver import FemSolution, FluxJump, assemble_system, fem_solve, interface_flux_jump

__all__ = [
    "Mesh",
    "check_resolution",
    "graded_parameters",
    "mesh_scatterer",
    "dtn_matrix",
    "dtn_tail_estimate",
    "stiffness_matrix",
    "weighted_mass_matrix",
    "FemSolution",
    "FluxJump",
    "assemble_system",
    "fem_solve",
    "interface_flux_jump",
    "circle_representation",
    "near_to_far",
]
