"""Decay-rate fitting over tau sweeps

Turns "let tau -> infinity" into a measured exponent: values ~ C tau^{-p}
are fitted by least squares on log|value| against log tau.
"""

import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np
from scipy import stats

from ..errors import DecayFitError, LabWarning
from ..logging.sweep_logger import SweepLogger, write_sweep_csv
from ..parallel import ordered_map

MIN_POINTS = 5


def geometric_grid(start: float = 16.0, stop: float = 4096.0, ratio: float = 2.0) -> np.ndarray:
    """start, start*ratio, ... up to stop (inclusive)"""
    if not 0 < start < stop or ratio <= 1:
        raise DecayFitError("geometric grid needs 0 < start < stop and ratio > 1")
    count = int(np.floor(np.log(stop / start) / np.log(ratio) + 1e-9)) + 1
    return start * ratio ** np.arange(count)


@dataclass(frozen=True)
class AsymptoticFit:
    """Power-law fit value ~ C tau^{-slope}

    Attributes:
        slope: Fitted exponent p
        intercept: log C
        r_squared: Coefficient of determination in [0, 1]
        tau_grid: Strictly increasing grid
        monotone: Whether |values| decreased monotonically
    """

    slope: float
    intercept: float
    r_squared: float
    tau_grid: tuple[float, ...]
    monotone: bool = True

    def predict(self, tau) -> np.ndarray:
        return np.exp(self.intercept) * np.asarray(tau, dtype=float) ** (-self.slope)

    def to_dict(self) -> dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "tau_grid": list(self.tau_grid),
            "monotone": self.monotone,
        }


def fit_decay(tau_grid, values) -> AsymptoticFit:
    """Fit log|value| = intercept - slope * log tau.

    Args:
        tau_grid: Strictly increasing positive grid (>= 5 points)
        values: Complex values on the grid, all nonzero

    Returns:
        AsymptoticFit; non-monotone |values| are flagged (monotone=False)
        and reported with a LabWarning
    """
    tau = np.asarray(tau_grid, dtype=float).ravel()
    magnitude = np.abs(np.asarray(values, dtype=complex).ravel())
    if tau.size != magnitude.size:
        raise DecayFitError(f"grid has {tau.size} points but {magnitude.size} values were given")
    if tau.size < MIN_POINTS:
        raise DecayFitError(f"a decay fit needs at least {MIN_POINTS} points, got {tau.size}")
    if np.any(tau <= 0) or np.any(np.diff(tau) <= 0):
        raise DecayFitError("tau grid must be positive and strictly increasing")
    if np.any(magnitude == 0) or not np.all(np.isfinite(magnitude)):
        raise DecayFitError("decay fit requires finite nonzero values")

    result = stats.linregress(np.log(tau), np.log(magnitude))
    monotone = bool(np.all(np.diff(magnitude) < 0))
    if not monotone:
        warnings.warn("|values| are not monotonically decreasing over the tau grid", LabWarning, stacklevel=2)
    return AsymptoticFit(
        slope=float(-result.slope),
        intercept=float(result.intercept),
        r_squared=float(min(1.0, result.rvalue**2)),
        tau_grid=tuple(float(t) for t in tau),
        monotone=monotone,
    )


@dataclass
class DecaySweep:
    """Exact and leading values over a tau grid, with the fit of |exact|"""

    kind: str
    label: str
    tau: np.ndarray
    exact: np.ndarray
    leading: np.ndarray
    fit: AsymptoticFit
    csv_path: Path | None = None
    extra: dict = field(default_factory=dict)

    def relative_remainders(self) -> np.ndarray:
        return np.abs(self.exact - self.leading) / np.abs(self.leading)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "label": self.label,
            "fit": self.fit.to_dict(),
            "csv": str(self.csv_path) if self.csv_path else None,
        }


def decay_sweep(
    evaluate: Callable[[float], tuple[complex, complex]],
    tau_grid=None,
    kind: str = "boundary",
    label: str = "",
    csv_path: str | Path | None = None,
    logger: SweepLogger | None = None,
    threads: int | None = None,
) -> DecaySweep:
    """Evaluate (exact, leading) on a tau grid and fit the decay of |exact|.

    Args:
        evaluate: tau -> (exact, leading)
        tau_grid: Grid (default geometric 16..4096, ratio 2)
        kind: Integral kind for logs and reports
        label: Free-form label
        csv_path: Write (tau, abs_exact, abs_leading) here if given
        logger: Optional SweepLogger
        threads: Worker count (default from CCLAB_THREADS)

    Returns:
        DecaySweep
    """
    tau = geometric_grid() if tau_grid is None else np.asarray(tau_grid, dtype=float)
    pairs = ordered_map(evaluate, tau, threads)
    exact = np.array([p[0] for p in pairs], dtype=complex)
    leading = np.array([p[1] for p in pairs], dtype=complex)
    fit = fit_decay(tau, exact)
    if logger is not None:
        for t, ex, le in zip(tau, exact, leading):
            logger.log(kind, t, ex, le, label=label)
    path = write_sweep_csv(csv_path, tau, exact, leading) if csv_path is not None else None
    return DecaySweep(kind, label, tau, exact, leading, fit, path)
