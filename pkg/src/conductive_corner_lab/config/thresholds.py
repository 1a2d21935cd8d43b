"""Threshold configuration

Numeric tolerances and decision thresholds shared by the experiment
harness, the UCP verifier and the solvers.
"""

from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np
import yaml

from ..errors import ConfigError
from ..interfaces import CheckStatus

DEFAULTS_FILE = Path(__file__).with_name("defaults.yaml")


@dataclass(frozen=True)
class LabThresholds:
    """Threshold configuration.

    Attributes:
        theta_inv: Far-field norm (relative to the incident amplitude) below
            which a scan point is flagged as near-invisible
        theta_adm: Extrapolated ball-average level for admissibility
        tol_angle: Tolerance of the rational angle classification
        angle_denominator: Denominator bound Q for angle classification
        det_singular: |det| below this marks a step system singular
        forced_residual: Forced-zero residual factor (times condition number)
        tau_min: First point of the default tau grid
        tau_max: Last point of the default tau grid
        tau_ratio: Ratio of the geometric tau grid
        dtn_tail: DtN truncation tail estimate above which a warning is issued
        dtn_extra_modes: Modes beyond k*Rt kept in the DtN map
        fit_r_squared: r^2 floor for a reliable power-law fit
        fb_divisor: |J_n(kappa r_c)| below this makes a fit ill-conditioned
        warn_margin: Metrics within this factor of a threshold give WARN
    """

    theta_inv: float = 1e-4
    theta_adm: float = 1e-3
    tol_angle: float = 1e-12
    angle_denominator: int = 10**6
    det_singular: float = 1e-9
    forced_residual: float = 1e-8
    tau_min: float = 16.0
    tau_max: float = 4096.0
    tau_ratio: float = 2.0
    dtn_tail: float = 1e-8
    dtn_extra_modes: int = 20
    fit_r_squared: float = 0.9
    fb_divisor: float = 1e-8
    warn_margin: float = 10.0

    def __post_init__(self):
        for name in ("theta_inv", "theta_adm", "tol_angle", "det_singular", "fb_divisor"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        if self.angle_denominator < 2:
            raise ConfigError("angle_denominator must be >= 2")
        if not 0 < self.tau_min < self.tau_max:
            raise ConfigError("tau grid requires 0 < tau_min < tau_max")
        if self.tau_ratio <= 1:
            raise ConfigError("tau_ratio must exceed 1")
        if not 0 <= self.fit_r_squared <= 1:
            raise ConfigError("fit_r_squared must lie in [0, 1]")

    def tau_grid(self) -> np.ndarray:
        """Geometric tau grid from tau_min to tau_max (inclusive)"""
        count = int(round(np.log(self.tau_max / self.tau_min) / np.log(self.tau_ratio))) + 1
        return self.tau_min * self.tau_ratio ** np.arange(count)

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization"""
        return asdict(self)


def load_thresholds(path: str | Path | None = None, **overrides) -> LabThresholds:
    """Load thresholds from a YAML file.

    Args:
        path: YAML file with a flat mapping of threshold names
            (default: the bundled defaults.yaml)
        **overrides: Values taking precedence over the file

    Returns:
        LabThresholds instance
    """
    path = Path(path) if path is not None else DEFAULTS_FILE
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except OSError as e:
        raise ConfigError(f"cannot read thresholds file {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"invalid YAML in {path}: {e}") from e

    if not isinstance(data, dict):
        raise ConfigError(f"{path} must contain a mapping")
    data = dict(data.get("thresholds", data))
    data.update({k: v for k, v in overrides.items() if v is not None})

    known = {f.name for f in fields(LabThresholds)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown threshold keys: {', '.join(unknown)}")
    try:
        return LabThresholds(**data)
    except TypeError as e:
        raise ConfigError(str(e)) from e


def invisibility_status(
    norm: float,
    reference: float,
    config: LabThresholds,
) -> CheckStatus:
    """Classify a far-field norm against the invisibility threshold.

    Priority:
    1. Below theta_inv * reference: FAIL (candidate near-invisibility)
    2. Within warn_margin of the threshold: WARN
    3. Otherwise PASS (scatterer visibly scatters)

    Args:
        norm: ||u_inf||_{L2(S^1)}
        reference: Incident amplitude scale on the scatterer
        config: LabThresholds

    Returns:
        CheckStatus
    """
    level = config.theta_inv * reference
    if norm < level:
        return CheckStatus.FAIL
    if norm < config.warn_margin * level:
        return CheckStatus.WARN
    return CheckStatus.PASS


def build_reason(norm: float, reference: float, status: CheckStatus) -> str:
    """Build a human-readable reason string for a scan point.

    Args:
        norm: ||u_inf||_{L2(S^1)}
        reference: Incident amplitude scale
        status: Determined CheckStatus

    Returns:
        Reason string
    """
    parts = [f"[{status.value}]", f"||u_inf||={norm:.3e}", f"(reference {reference:.3e})"]
    if status == CheckStatus.FAIL:
        parts.append("candidate near-invisibility; numerics cannot certify invisibility")
    elif status == CheckStatus.WARN:
        parts.append("close to the invisibility threshold")
    return " ".join(parts)
