"""Sectors, polygons, scatterer structures and corner frames"""

from .sector import Sector
from .polygon import Polygon
from .angles import (
    AngleClass,
    IrrationalWithin,
    Rational,
    classify_angle,
    convex_irrational_vertices,
    is_convex_irrational,
    is_irrational_polygon,
    polygon_angle_classes,
)
from .corners import RigidMotion, corner_at_vertex, corner_sectors, max_corner_radius
from .structures import (
    CellScatterer,
    DiskScatterer,
    LinearIndex,
    NestScatterer,
    Scatterer,
    scatterer_from_dict,
)
from .validation import StructureValidator, validate_structure

__all__ = [
    "Sector",
    "Polygon",
    "AngleClass",
    "IrrationalWithin",
    "Rational",
    "classify_angle",
    "convex_irrational_vertices",
    "is_convex_irrational",
    "is_irrational_polygon",
    "polygon_angle_classes",
    "RigidMotion",
    "corner_at_vertex",
    "corner_sectors",
    "max_corner_radius",
    "CellScatterer",
    "DiskScatterer",
    "LinearIndex",
    "NestScatterer",
    "Scatterer",
    "scatterer_from_dict",
    "StructureValidator",
    "validate_structure",
]
