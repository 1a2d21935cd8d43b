"""Exception hierarchy

Every error derives from LabError and from the builtin that best matches
it, so callers can catch either.
"""


class LabError(Exception):
    """Base class for all conductive-corner-lab errors"""


class LabWarning(UserWarning):
    """Non-fatal numerical warning (tail estimates, unreliable fits)"""


class ConfigError(LabError, ValueError):
    """Invalid configuration or scatterer description"""


class GeometryError(LabError, ValueError):
    """Invalid geometric input (degenerate polygon, r0 too large, ...)"""


class DomainError(LabError, ValueError):
    """Argument outside the mathematical domain of an operation"""


class SpecialFunctionError(LabError, ArithmeticError):
    """Special function evaluation failed (singularity or overflow)"""


class IllConditionedFitError(LabError, ArithmeticError):
    """Fourier-Bessel fit divides by a near-zero Bessel value"""

    def __init__(self, order: int, value: complex):
        self.order = order
        self.value = value
        super().__init__(
            f"J_{order}(kappa*r_c) = {abs(value):.3e} is below the divisor "
            f"tolerance; the fit is ill-conditioned at order n={order}"
        )


class DecayViolationError(LabError, ValueError):
    """CGO phase does not decay along a ray (Re mu <= 0)"""


class DecayFitError(LabError, ValueError):
    """Invalid input to a decay-rate fit"""


class ResonanceError(LabError, ArithmeticError):
    """Singular modal matching system at a discrete resonance"""

    def __init__(self, mode: int, k: float, condition: float):
        self.mode = mode
        self.k = k
        self.condition = condition
        super().__init__(
            f"interface matrix singular for mode n={mode} at k={k} "
            f"(condition number {condition:.3e})"
        )


class SolverError(LabError, RuntimeError):
    """Finite-element system could not be solved"""


class LabAssertionError(LabError, AssertionError):
    """A run's declared expectation does not hold"""
