"""Structure validation

Runs the structure checkers over a scatterer and collects the failing
clauses. Violations are returned as data; nothing here raises.

Clauses:
- nest: "convexity" for every layer, "nesting" for every consecutive pair
- cell: "convexity" for every cell, "partition_overlap", "partition_union",
  "boundary_vertex"
"""

from ..checks import BoundaryVertexChecker, ConvexityChecker, NestingChecker, PartitionChecker
from ..interfaces import CheckResult
from .structures import CellScatterer, DiskScatterer, NestScatterer


class StructureValidator:
    """Runs every structure check and keeps all results

    Args:
        convexity_tol: Relative tolerance of the cross-product sign test
        rel_gap: Nesting separation threshold relative to diam(Sigma_1)
        rel_tol: Relative tolerance of partition and boundary-vertex tests
    """

    def __init__(self, convexity_tol: float = 1e-12, rel_gap: float = 1e-9, rel_tol: float = 1e-9):
        self.convexity_checker = ConvexityChecker(tol=convexity_tol)
        self.nesting_checker = NestingChecker(rel_gap=rel_gap)
        self.partition_checker = PartitionChecker(rel_area_tol=rel_tol)
        self.boundary_vertex_checker = BoundaryVertexChecker(rel_tol=rel_tol)

    def check_nest(self, scatterer: NestScatterer) -> list[CheckResult]:
        results = [
            self.convexity_checker.check(layer, label=f"layer {i + 1}")
            for i, layer in enumerate(scatterer.layers)
        ]
        diameter = scatterer.outer.diameter
        for i, (outer, inner) in enumerate(zip(scatterer.layers, scatterer.layers[1:])):
            results.append(self.nesting_checker.check(outer, inner, diameter, index=i + 1))
        return results

    def check_cells(self, scatterer: CellScatterer) -> list[CheckResult]:
        cells = list(scatterer.cells)
        results = [
            self.convexity_checker.check(cell, label=f"cell {i + 1}")
            for i, cell in enumerate(cells)
        ]
        results.append(self.partition_checker.check_disjoint(cells))
        union = self.partition_checker.check_union(cells)
        results.append(union)
        # clause (c) needs a well-formed outer boundary
        if union.passed:
            omega = self.partition_checker.union(cells)
            results.append(self.boundary_vertex_checker.check(cells, omega))
        return results

    def check(self, scatterer) -> list[CheckResult]:
        """All check results (passing and failing) for a scatterer"""
        if isinstance(scatterer, NestScatterer):
            return self.check_nest(scatterer)
        if isinstance(scatterer, CellScatterer):
            return self.check_cells(scatterer)
        if isinstance(scatterer, DiskScatterer):
            # radii ordering is enforced at construction
            return []
        raise TypeError(f"cannot validate {type(scatterer).__name__}")


def validate_structure(scatterer, validator: StructureValidator | None = None) -> list[CheckResult]:
    """Violated structure clauses.

    Args:
        scatterer: NestScatterer, CellScatterer or DiskScatterer
        validator: Optional configured StructureValidator

    Returns:
        Failing CheckResults; empty iff every invariant holds
    """
    validator = validator or StructureValidator()
    return [result for result in validator.check(scatterer) if not result.passed]
