"""Structure checkers for conductive scatterers"""

from .convexity_check import ConvexityChecker
from .nesting_check import NestingChecker
from .partition_check import PartitionChecker
from .boundary_vertex_check import BoundaryVertexChecker

__all__ = [
    "ConvexityChecker",
    "NestingChecker",
    "PartitionChecker",
    "BoundaryVertexChecker",
]
