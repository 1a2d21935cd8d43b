"""Determinant conditions, induction-step systems and their verification"""

from .determinants import (
    SingularAngle,
    det_gradient,
    det_param_recovery,
    det_step,
    det_step_zeros,
    gradient_matrices,
    param_recovery_identity,
    param_recovery_matrix,
    shape_case_factors,
    singular_angles,
    singular_witness,
    step_matrix,
)
from .systems import StepSystem, assemble_step_system, bessel_ray_moment, boundary_terms, moment_step_matrix
from .verify import StepReport, UcpReport, ucp_verify, verify_step

__all__ = [
    "SingularAngle",
    "det_gradient",
    "det_param_recovery",
    "det_step",
    "det_step_zeros",
    "gradient_matrices",
    "param_recovery_identity",
    "param_recovery_matrix",
    "shape_case_factors",
    "singular_angles",
    "singular_witness",
    "step_matrix",
    "StepSystem",
    "assemble_step_system",
    "bessel_ray_moment",
    "boundary_terms",
    "moment_step_matrix",
    "StepReport",
    "UcpReport",
    "ucp_verify",
    "verify_step",
]
