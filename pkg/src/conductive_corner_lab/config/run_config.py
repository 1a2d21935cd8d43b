"""Run configuration for the command-line interface

A run is described by one TOML file:

    command = "invis-scan"
    scatterer = "irrational_triangle"   # preset name or file path
    output = "runs/triangle"

    [params]
    k_grid = [0.5, 1.0, 2.0, 4.0]

    [incident]
    kind = "plane"
    theta_d = 0.0

    [thresholds]
    theta_inv = 1e-4

Relative paths are resolved against the directory of the file. Every
resolved value (defaults included) is written to the run manifest.
"""

import hashlib
import json
import math
import tomllib
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from ..errors import ConfigError
from ..io import list_presets
from .thresholds import LabThresholds

COMMANDS = ("solve", "farfield", "ucp-verify", "det-scan", "invis-scan", "diff", "admissibility")
SCATTERER_COMMANDS = ("solve", "farfield", "invis-scan", "diff", "admissibility")
SINGLE_K_COMMANDS = ("solve", "farfield", "diff", "admissibility")


@dataclass
class RunParams:
    """Numeric parameters of a run (unused ones are ignored by the command)

    Attributes:
        k: Wavenumber
        k_grid: Wavenumber grid for invis-scan
        solver: "auto", "mie" or "fem"
        h: Explicit mesh size
        points_per_wavelength: Mesh density when h is not given
        truncation_factor: Rt / R_s
        directions: Far-field directions
        beta: Opening angle for ucp-verify
        beta_min: First angle of the det-scan grid
        beta_max: Last angle of the det-scan grid
        beta_count: Points of the det-scan grid
        max_step: Last induction step / largest ell of det-scan
        eta: Conductive constant for ucp-verify ([re, im] or number)
        gamma1: kappa^2 of the ucp-verify trial field
        tau_grid: Explicit tau grid for ucp-verify
        rho0: Largest admissibility radius
        right_angle_policy: "cond2", "always" or "never"
    """

    k: float | None = None
    k_grid: list[float] = field(default_factory=list)
    solver: str = "auto"
    h: float | None = None
    points_per_wavelength: float = 20.0
    truncation_factor: float = 1.5
    directions: int = 256
    beta: float | None = None
    beta_min: float = 0.01
    beta_max: float = 3.13
    beta_count: int = 10_000
    max_step: int = 5
    eta: complex = 1.0
    gamma1: float = 1.0
    tau_grid: list[float] = field(default_factory=list)
    rho0: float | None = None
    right_angle_policy: str = "cond2"


@dataclass
class RunConfig:
    """Resolved run configuration

    Attributes:
        command: One of COMMANDS
        output: Output directory
        scatterer: Preset name or scatterer file
        other: Second scatterer for diff
        params: Numeric parameters
        incident: Incident wave description ({"kind": ..., params})
        thresholds: Threshold overrides
        threads: Worker count (None: CCLAB_THREADS)
        check: Turn acceptance checks into exit status 3
    """

    command: str
    output: Path
    scatterer: str | None = None
    other: str | None = None
    params: RunParams = field(default_factory=RunParams)
    incident: dict = field(default_factory=lambda: {"kind": "plane", "theta_d": 0.0})
    thresholds: dict = field(default_factory=dict)
    threads: int | None = None
    check: bool = False

    def __post_init__(self):
        self.output = Path(self.output)
        self.validate()

    def validate(self) -> None:
        """Raise ConfigError naming the first violated constraint"""
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}; expected one of {', '.join(COMMANDS)}")
        p = self.params
        if self.command in SCATTERER_COMMANDS and not self.scatterer:
            raise ConfigError(f"{self.command} needs a scatterer")
        if self.command == "diff" and not self.other:
            raise ConfigError("diff needs a second scatterer (other)")
        for name in (self.scatterer, self.other):
            if name and name not in list_presets() and not Path(name).is_file():
                raise ConfigError(f"scatterer {name!r} is neither a preset nor an existing file")
        if self.command in SINGLE_K_COMMANDS and not (p.k is not None and p.k > 0):
            raise ConfigError(f"{self.command} needs a positive wavenumber k")
        if self.command == "invis-scan":
            if not p.k_grid or any(not k > 0 for k in p.k_grid):
                raise ConfigError("invis-scan needs a non-empty grid of positive wavenumbers")
        if self.command == "ucp-verify":
            if p.beta is None or not 0 < p.beta < math.pi:
                raise ConfigError("ucp-verify needs an opening angle beta in (0, pi)")
            if complex(p.eta) == 0:
                raise ConfigError("ucp-verify needs a nonzero eta")
            if not p.gamma1 > 0:
                raise ConfigError("gamma1 must be positive")
        if self.command == "det-scan":
            if not 0 < p.beta_min < p.beta_max < math.pi:
                raise ConfigError("det-scan needs 0 < beta_min < beta_max < pi")
            if p.beta_count < 2:
                raise ConfigError("beta_count must be >= 2")
        if p.max_step < 0:
            raise ConfigError("max_step must be >= 0")
        if p.right_angle_policy not in ("cond2", "always", "never"):
            raise ConfigError(f"unknown right_angle_policy {p.right_angle_policy!r}")
        if self.threads is not None and self.threads < 1:
            raise ConfigError("threads must be >= 1")
        try:
            self.threshold_config()
        except TypeError as e:
            raise ConfigError(f"invalid thresholds: {e}") from e

    def threshold_config(self) -> LabThresholds:
        known = {f.name for f in fields(LabThresholds)}
        unknown = sorted(set(self.thresholds) - known)
        if unknown:
            raise ConfigError(f"unknown threshold keys: {', '.join(unknown)}")
        return LabThresholds(**self.thresholds)

    def to_dict(self) -> dict:
        params = asdict(self.params)
        eta = complex(params["eta"])
        params["eta"] = [eta.real, eta.imag]
        return {
            "command": self.command,
            "output": str(self.output),
            "scatterer": self.scatterer,
            "other": self.other,
            "params": params,
            "incident": self.incident,
            "thresholds": self.threshold_config().to_dict(),
            "threads": self.threads,
            "check": self.check,
        }

    def config_hash(self) -> str:
        """sha256 of the canonical JSON form (output directory excluded)"""
        data = self.to_dict()
        data.pop("output")
        text = json.dumps(data, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    @classmethod
    def from_dict(cls, data: dict, base_dir: Path | None = None) -> "RunConfig":
        data = dict(data)
        base_dir = base_dir or Path.cwd()
        params = dict(data.pop("params", {}) or {})
        known = {f.name for f in fields(RunParams)}
        unknown = sorted(set(params) - known)
        if unknown:
            raise ConfigError(f"unknown parameters: {', '.join(unknown)}")
        if "eta" in params:
            params["eta"] = _parse_complex(params["eta"])
        allowed = {f.name for f in fields(cls)} - {"params"}
        extra = sorted(set(data) - allowed)
        if extra:
            raise ConfigError(f"unknown configuration keys: {', '.join(extra)}")
        if "command" not in data:
            raise ConfigError("configuration needs a command")
        for key in ("scatterer", "other"):
            if data.get(key):
                data[key] = _resolve(str(data[key]), base_dir)
        data["output"] = base_dir / data.get("output", "output")
        try:
            return cls(params=RunParams(**params), **data)
        except TypeError as e:
            raise ConfigError(f"invalid configuration: {e}") from e

    @classmethod
    def from_toml(cls, path: str | Path | None = None, overrides: dict | None = None) -> "RunConfig":
        """Load a TOML run file and apply overrides.

        Args:
            path: TOML file (None: start from an empty configuration)
            overrides: Top-level keys or parameter names; None values are ignored

        Returns:
            Validated RunConfig
        """
        data: dict = {}
        base_dir = Path.cwd()
        if path is not None:
            path = Path(path)
            try:
                data = tomllib.loads(path.read_text(encoding="utf-8"))
            except OSError as e:
                raise ConfigError(f"cannot read {path}: {e}") from e
            except tomllib.TOMLDecodeError as e:
                raise ConfigError(f"invalid TOML in {path}: {e}") from e
            base_dir = path.resolve().parent
        params = dict(data.get("params", {}) or {})
        param_names = {f.name for f in fields(RunParams)}
        for key, value in (overrides or {}).items():
            if value is None:
                continue
            if key in param_names:
                params[key] = value
            else:
                data[key] = value
        data["params"] = params
        # overrides given on the command line are relative to the working directory
        for key in ("scatterer", "other", "output"):
            if overrides and overrides.get(key) is not None:
                data[key] = str(Path(overrides[key]).resolve()) if key == "output" else _resolve(overrides[key], Path.cwd())
        return cls.from_dict(data, base_dir)


def _parse_complex(value) -> complex:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float, complex)):
        return complex(value)
    raise ConfigError(f"cannot interpret {value!r} as a complex number")


def _resolve(value: str, base_dir: Path) -> str:
    """Paths become absolute; bare preset names are kept"""
    path = Path(value)
    if path.suffix.lower() in (".toml", ".json") or len(path.parts) > 1:
        return str(path if path.is_absolute() else (base_dir / path).resolve())
    return value
